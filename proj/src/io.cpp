#include "fieldstar/io.hpp"

#include "fieldstar/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

namespace fieldstar::io {

using nlohmann::json;

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Recursive-descent parser over the expression and kernel grammars.
class Parser {
public:
    Parser(const Session& s, std::string_view text) : s_(s), t_(text) {}

    Expr parse_expr_all() {
        Expr e = expr();
        expect_end();
        return e;
    }

    Functional parse_functional_all() {
        skip();
        if (!accept_word("int")) fail("expected 'int{label}:'");
        expect('{');
        Label l = label();
        expect('}');
        expect(':');
        Expr d = expr();
        expect_end();
        for (Label used : labels_of(d))
            if (used != kFree) fail("functional densities use unlabelled jets");
        require_condition_b(d);
        return Functional{d, l};
    }

    Kernel parse_kernel_all() {
        Kernel k(s_.dim);
        skip();
        bool negative = false;
        if (accept('-'))
            negative = true;
        else
            accept('+');
        for (;;) {
            Kernel term = kernel_term();
            k += negative ? term * Coeff(-1) : term;
            skip();
            if (accept('+'))
                negative = false;
            else if (accept('-'))
                negative = true;
            else
                break;
        }
        expect_end();
        return k;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip() {
        while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }

    char peek() {
        skip();
        return pos_ < t_.size() ? t_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    void expect_end() {
        if (peek() != '\0') fail("unexpected trailing input");
    }

    std::string peek_word() {
        skip();
        std::size_t p = pos_;
        if (p >= t_.size() || !is_ident_start(t_[p])) return {};
        while (p < t_.size() && is_ident_char(t_[p])) ++p;
        return std::string(t_.substr(pos_, p - pos_));
    }

    bool accept_word(const std::string& w) {
        if (peek_word() != w) return false;
        pos_ += w.size();
        return true;
    }

    std::string word() {
        std::string w = peek_word();
        if (w.empty()) fail("expected identifier");
        pos_ += w.size();
        return w;
    }

    long natural() {
        skip();
        std::size_t p = pos_;
        while (p < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p]))) ++p;
        if (p == pos_) fail("expected a natural number");
        if (p - pos_ > 9) fail("number too large");
        long v = std::stol(std::string(t_.substr(pos_, p - pos_)));
        pos_ = p;
        return v;
    }

    /// Integer literal of any length, for coefficients.
    mpz_class integer() {
        skip();
        std::size_t p = pos_;
        while (p < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p]))) ++p;
        if (p == pos_) fail("expected a number");
        mpz_class v(std::string(t_.substr(pos_, p - pos_)));
        pos_ = p;
        return v;
    }

    Label label() {
        std::size_t at = pos_;
        std::string w = word();
        auto l = s_.find_label(w);
        if (!l) {
            pos_ = at;
            fail("unknown label '" + w + "'");
        }
        return *l;
    }

    MultiIndex index_list() {
        expect('[');
        MultiIndex a(s_.dim);
        int i = 0;
        for (;;) {
            long v = natural();
            if (i >= s_.dim) fail("multi-index longer than the session dimension");
            a.set(i++, static_cast<int>(v));
            if (accept(']')) break;
            expect(',');
        }
        if (i != s_.dim) fail("multi-index shorter than the session dimension");
        return a;
    }

    /// Direction of a "dK" word, or 0.
    int direction_word(const std::string& w) const {
        if (w.size() < 2 || w[0] != 'd') return 0;
        for (std::size_t j = 1; j < w.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(w[j]))) return 0;
        if (w.size() > 3) return -1;
        return std::stoi(w.substr(1));
    }

    int checked_direction(const std::string& w) {
        int d = direction_word(w);
        if (d < 1 || d > s_.dim) fail("derivative direction out of range in '" + w + "'");
        return d;
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (accept('+'))
                e += term();
            else if (accept('-'))
                e -= term();
            else
                return e;
        }
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            if (accept('*')) {
                e *= unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Expr d = unary();
                if (!d.is_constant() || d.constant_value().is_zero()) {
                    pos_ = at;
                    fail("division by a non-constant or zero");
                }
                e *= Coeff(1) / d.constant_value();
            } else {
                return e;
            }
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Expr power() {
        Expr b = primary();
        if (accept('^')) {
            long k = natural();
            if (k > 64) fail("exponent too large");
            return pow(b, static_cast<unsigned>(k));
        }
        return b;
    }

    /// Label carried by the jets of e, kFree if none; ambiguity is an error.
    Label jet_label(const Expr& e) {
        std::optional<Label> found;
        for (const auto& [m, c] : e.terms())
            for (const auto& [a, k] : m.factors)
                if (a.kind == AtomKind::Jet || a.kind == AtomKind::Func) {
                    if (found && *found != a.label) fail("derivative of an expression with several labels");
                    found = a.label;
                }
        return found.value_or(kFree);
    }

    Expr primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Expr(Coeff(mpq_class(integer())), s_.dim);
        std::size_t at = pos_;
        std::string w = peek_word();
        if (w.empty()) fail("unexpected character");
        pos_ += w.size();
        if (w == "i") return Expr(Coeff::i(), s_.dim);
        if (int dir = direction_word(w); dir != 0 && peek() == '(') {
            dir = checked_direction(w);
            expect('(');
            Expr e = expr();
            expect(')');
            return total_derivative(e, jet_label(e), dir);
        }
        if (w == "laplacian") {
            expect('(');
            Expr e = expr();
            expect(')');
            Label l = jet_label(e);
            Expr out(s_.dim);
            for (int d = 1; d <= s_.dim; ++d) out += total_derivative(total_derivative(e, l, d), l, d);
            return out;
        }
        if (w == "delta") {
            MultiIndex g(s_.dim);
            if (peek() == '[') g = index_list();
            expect('(');
            if (peek() == '0') {
                natural();
                expect(')');
                return delta(kX, kX, g);
            }
            Label a = label();
            expect(',');
            Label b = label();
            expect(')');
            if (a == b) fail("delta needs two distinct labels");
            return delta(a, b, g);
        }
        if (w == "int") {
            expect('(');
            Label l = label();
            expect(')');
            return Expr::atom(Atom::integral(l), s_.dim);
        }
        if (auto f = s_.find_function(w)) return function(*f);
        if (auto p = s_.find_param(w)) return Expr::param(*p, s_.dim);
        if (auto so = s_.find_sort(w)) {
            MultiIndex a(s_.dim);
            if (peek() == '[') a = index_list();
            Label l = kFree;
            if (accept('@')) l = label();
            return Expr::jet(l, *so, a);
        }
        pos_ = at;
        fail("unknown identifier '" + w + "'");
    }

    Expr function(std::uint16_t id) {
        int order = 0;
        while (peek() == '\'') {
            ++pos_;
            ++order;
        }
        if (order == 0 && peek() == '^') {
            std::size_t at = pos_;
            ++pos_;
            if (accept('(')) {
                order = static_cast<int>(natural());
                expect(')');
            } else {
                pos_ = at;
            }
        }
        expect('(');
        std::string w = word();
        auto so = s_.find_sort(w);
        if (!so) fail("unknown sort '" + w + "'");
        Label l = kFree;
        if (accept('@')) l = label();
        expect(')');
        const FunctionDecl& d = s_.functions[id];
        if (*so != d.argument) fail("function '" + d.name + "' takes '" + s_.sorts[d.argument].name + "'");
        return Expr::atom(Atom::func(l, *so, s_.dim, id, static_cast<std::uint16_t>(order), d.vanish), s_.dim);
    }

    Coeff constant_factor() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            std::size_t at = pos_;
            Expr e = expr();
            expect(')');
            if (!e.is_constant()) {
                pos_ = at;
                fail("kernel coefficients must be constants");
            }
            return e.constant_value();
        }
        return Coeff(mpq_class(integer()));
    }

    Kernel kernel_term() {
        Coeff coeff(1);
        MultiIndex gamma(s_.dim);
        bool has_delta = false;
        bool divide = false;
        for (;;) {
            char c = peek();
            Coeff factor(1);
            bool is_coeff = false;
            if (c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
                factor = constant_factor();
                is_coeff = true;
            } else {
                std::size_t at = pos_;
                std::string w = word();
                if (w == "i") {
                    factor = Coeff::i();
                    is_coeff = true;
                } else if (w == "delta") {
                    if (has_delta) fail("one delta per kernel term");
                    has_delta = true;
                } else if (direction_word(w) != 0) {
                    int d = checked_direction(w);
                    long k = 1;
                    if (accept('^')) k = natural();
                    MultiIndex u(s_.dim);
                    u.set(d - 1, static_cast<int>(k));
                    gamma += u;
                } else {
                    pos_ = at;
                    fail("unexpected '" + w + "' in kernel");
                }
                if (has_delta && divide) fail("cannot divide by a kernel factor");
            }
            if (is_coeff) {
                if (divide) {
                    if (factor.is_zero()) fail("division by zero");
                    coeff /= factor;
                } else {
                    coeff *= factor;
                }
            }
            divide = false;
            char n = peek();
            if (n == '*') {
                ++pos_;
                continue;
            }
            if (n == '/') {
                ++pos_;
                divide = true;
                continue;
            }
            if (n == '\0' || n == '+' || n == '-') break;
        }
        if (!has_delta) {
            if (coeff.is_zero()) return Kernel(s_.dim);
            fail("kernel term without delta");
        }
        Kernel k(s_.dim);
        k.add(gamma, coeff);
        return k;
    }

    const Session& s_;
    std::string_view t_;
    std::size_t pos_ = 0;
};

std::string index_suffix(const MultiIndex& a) { return a.is_zero() ? std::string() : a.to_string(); }

std::string function_marker(int order) {
    if (order == 0) return "";
    if (order <= 3) return std::string(static_cast<std::size_t>(order), '\'');
    return "^(" + std::to_string(order) + ")";
}

std::string atom_text(const Session& s, const Atom& a) {
    switch (a.kind) {
        case AtomKind::Jet: {
            std::string r = s.sorts.at(a.sort).name + index_suffix(a.index);
            if (a.label != kFree) r += "@" + s.label_name(a.label);
            return r;
        }
        case AtomKind::Func: {
            std::string r = s.functions.at(a.id).name + function_marker(a.order) + "(" + s.sorts.at(a.sort).name;
            if (a.label != kFree) r += "@" + s.label_name(a.label);
            return r + ")";
        }
        case AtomKind::Param:
            return s.params.at(a.id);
        case AtomKind::Delta:
            return "delta" + index_suffix(a.index) + "(" + s.label_name(a.label) + "," + s.label_name(a.other) + ")";
        case AtomKind::DeltaAtZero:
            return "delta" + index_suffix(a.index) + "(0)";
        case AtomKind::Integral:
            return "int(" + s.label_name(a.label) + ")";
    }
    return "?";
}

int display_rank(AtomKind k) {
    switch (k) {
        case AtomKind::Param:
            return 0;
        case AtomKind::Jet:
        case AtomKind::Func:
            return 2;
        case AtomKind::Delta:
            return 3;
        case AtomKind::DeltaAtZero:
            return 4;
        case AtomKind::Integral:
            return 5;
    }
    return 6;
}

/// Coefficient times body, e.g. "phi", "-phi", "3/2*phi", "-i*phi", "(1 + i)*phi".
std::string with_coeff(const Coeff& c, const std::string& body) {
    if (body.empty()) return c.to_string();
    if (c.is_one()) return body;
    if (c == Coeff(-1)) return "-" + body;
    if (c.is_real() || sgn(c.re()) == 0) return c.to_string() + "*" + body;
    return "(" + c.to_string() + ")*" + body;
}

std::string join_terms(const std::vector<std::string>& terms) {
    if (terms.empty()) return "0";
    std::string out = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i) {
        const std::string& t = terms[i];
        if (!t.empty() && t[0] == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
    }
    return out;
}

struct Piece {
    std::vector<std::pair<int, std::string>> factors;  // (display rank, text)
    Coeff coeff;
};

std::string piece_text(Piece p) {
    std::stable_sort(p.factors.begin(), p.factors.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string body;
    for (const auto& f : p.factors) body += (body.empty() ? "" : "*") + f.second;
    return with_coeff(p.coeff, body);
}

Piece plain_piece(const Session& s, const Monomial& m, const Coeff& c, const Atom* skip = nullptr) {
    Piece p;
    p.coeff = c;
    for (const auto& [a, k] : m.factors) {
        std::uint32_t e = k;
        if (skip && a == *skip) --e;
        if (e == 0) continue;
        std::string t = atom_text(s, a);
        if (e > 1) t += "^" + std::to_string(e);
        p.factors.emplace_back(display_rank(a.kind), t);
    }
    return p;
}

json coeff_json(const Coeff& c) {
    if (c.is_real()) return rational_string(c.re());
    return json{{"re", rational_string(c.re())}, {"im", rational_string(c.im())}};
}

Coeff coeff_from_json(const json& j) {
    auto q = [](const json& v) {
        mpq_class r(v.get<std::string>());
        r.canonicalize();
        return r;
    };
    if (j.is_string()) return Coeff(q(j));
    return Coeff(q(j.at("re")), q(j.at("im")));
}

json index_json(const MultiIndex& a) {
    json arr = json::array();
    for (int i = 0; i < a.dim(); ++i) arr.push_back(a[i]);
    return arr;
}

MultiIndex index_from_json(const Session& s, const json& j) {
    if (!j.is_array() || static_cast<int>(j.size()) != s.dim)
        throw DimensionMismatch("multi-index length differs from dim");
    MultiIndex a(s.dim);
    for (int i = 0; i < s.dim; ++i) a.set(i, j.at(static_cast<std::size_t>(i)).get<int>());
    return a;
}

json terms_json(const Session& s, const Expr& e) {
    json arr = json::array();
    for (const auto& [m, c] : e.terms()) {
        json mono = json::array(), kern = json::array();
        for (const auto& [a, k] : m.factors) {
            json f;
            switch (a.kind) {
                case AtomKind::Jet:
                    f = {{"sort", s.sorts.at(a.sort).name}, {"index", index_json(a.index)}, {"pow", k}};
                    if (a.label != kFree) f["label"] = s.label_name(a.label);
                    mono.push_back(f);
                    break;
                case AtomKind::Func:
                    f = {{"func", s.functions.at(a.id).name}, {"order", a.order}, {"arg", s.sorts.at(a.sort).name},
                         {"pow", k}};
                    if (a.label != kFree) f["label"] = s.label_name(a.label);
                    mono.push_back(f);
                    break;
                case AtomKind::Param:
                    mono.push_back({{"param", s.params.at(a.id)}, {"pow", k}});
                    break;
                case AtomKind::Delta:
                    kern.push_back({{"delta", index_json(a.index)},
                                    {"labels", {s.label_name(a.label), s.label_name(a.other)}},
                                    {"pow", k}});
                    break;
                case AtomKind::DeltaAtZero:
                    kern.push_back({{"delta", index_json(a.index)}, {"labels", json::array()}, {"pow", k}});
                    break;
                case AtomKind::Integral:
                    kern.push_back({{"int", s.label_name(a.label)}});
                    break;
            }
        }
        arr.push_back(json::array({coeff_json(c), mono, kern}));
    }
    return arr;
}

Label label_from_json(const Session& s, const json& j) {
    auto l = s.find_label(j.get<std::string>());
    if (!l) throw ParseError("unknown label '" + j.get<std::string>() + "'", 0);
    return *l;
}

SortId sort_from_json(const Session& s, const json& j) {
    auto so = s.find_sort(j.get<std::string>());
    if (!so) throw ParseError("unknown sort '" + j.get<std::string>() + "'", 0);
    return *so;
}

Expr terms_from_json(const Session& s, const json& arr) {
    Expr out(s.dim);
    for (const auto& t : arr) {
        Expr term(coeff_from_json(t.at(0)), s.dim);
        for (const auto& f : t.at(1)) {
            auto p = f.at("pow").get<unsigned>();
            Label l = f.contains("label") ? label_from_json(s, f.at("label")) : kFree;
            Expr a;
            if (f.contains("sort")) {
                a = Expr::jet(l, sort_from_json(s, f.at("sort")), index_from_json(s, f.at("index")));
            } else if (f.contains("func")) {
                auto id = s.find_function(f.at("func").get<std::string>());
                if (!id) throw ParseError("unknown function", 0);
                a = Expr::atom(Atom::func(l, sort_from_json(s, f.at("arg")), s.dim, *id, f.at("order").get<std::uint16_t>(),
                                          s.functions[*id].vanish),
                               s.dim);
            } else {
                auto id = s.find_param(f.at("param").get<std::string>());
                if (!id) throw ParseError("unknown parameter", 0);
                a = Expr::param(*id, s.dim);
            }
            term *= pow(a, p);
        }
        for (const auto& f : t.at(2)) {
            if (f.contains("int")) {
                term *= Expr::atom(Atom::integral(label_from_json(s, f.at("int"))), s.dim);
                continue;
            }
            MultiIndex g = index_from_json(s, f.at("delta"));
            const json& ls = f.at("labels");
            Expr d = ls.empty() ? delta(kX, kX, g) : delta(label_from_json(s, ls.at(0)), label_from_json(s, ls.at(1)), g);
            term *= pow(d, f.at("pow").get<unsigned>());
        }
        out += term;
    }
    return out;
}

json envelope(std::string_view kind, int dim, json data) {
    return json{{"kind", std::string(kind)}, {"dim", dim}, {"data", std::move(data)}};
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
}

void check_envelope(const Session& s, const json& j, std::string_view kind) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("dim") || !j.contains("data"))
        throw ParseError("expected {\"kind\", \"dim\", \"data\"}", 0);
    if (j.at("dim").get<int>() != s.dim) throw DimensionMismatch("serialized dimension differs from the session");
    if (!kind.empty() && j.at("kind").get<std::string>() != kind)
        throw ParseError("expected kind '" + std::string(kind) + "'", 0);
}

}  // namespace

Expr parse_expr(const Session& s, std::string_view text) { return Parser(s, text).parse_expr_all(); }

Functional parse_functional(const Session& s, std::string_view text) {
    return Parser(s, text).parse_functional_all();
}

Kernel parse_kernel(const Session& s, std::string_view text) { return Parser(s, text).parse_kernel_all(); }

std::string render(const Session& s, const Expr& e) {
    std::vector<std::pair<Monomial, Coeff>> terms(e.terms().begin(), e.terms().end());
    std::vector<bool> used(terms.size(), false);
    std::vector<std::string> out;
    const int n = s.dim;

    auto find_term = [&](const Monomial& m) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (!used[i] && terms[i].first == m) return i;
        return std::nullopt;
    };

    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (used[i]) continue;
        const auto& [m, c] = terms[i];
        bool folded = false;
        if (n >= 2) {
            for (const auto& [a, k] : m.factors) {
                if (a.kind != AtomKind::Jet || a.index.order() != 2) continue;
                int dir = -1;
                for (int d = 0; d < n; ++d)
                    if (a.index[d] == 2) dir = d;
                if (dir < 0) continue;
                // rest = m / a
                Monomial rest;
                for (const auto& f : m.factors) {
                    if (f.first == a) {
                        if (f.second > 1) rest.factors.emplace_back(f.first, f.second - 1);
                    } else {
                        rest.factors.push_back(f);
                    }
                }
                std::vector<std::size_t> members;
                for (int d = 1; d <= n; ++d) {
                    MultiIndex two(n);
                    two.set(d - 1, 2);
                    Monomial target;
                    if (!multiply_monomials(rest, Expr::jet(a.label, a.sort, two).terms().begin()->first, target))
                        break;
                    auto j = find_term(target);
                    if (!j || !(terms[*j].second == c)) break;
                    if (std::find(members.begin(), members.end(), *j) != members.end()) break;
                    members.push_back(*j);
                }
                if (static_cast<int>(members.size()) != n) continue;
                for (std::size_t j : members) used[j] = true;
                Piece p = plain_piece(s, rest, c);
                std::string arg = s.sorts.at(a.sort).name;
                if (a.label != kFree) arg += "@" + s.label_name(a.label);
                p.factors.emplace_back(1, "laplacian(" + arg + ")");
                out.push_back(piece_text(p));
                folded = true;
                break;
            }
        }
        if (folded) continue;
        used[i] = true;
        out.push_back(piece_text(plain_piece(s, m, c)));
    }
    return join_terms(out);
}

std::string render(const Session& s, const Kernel& k) {
    std::vector<std::string> out;
    for (const auto& [g, c] : k.terms()) {
        std::string body;
        for (int d = 0; d < g.dim(); ++d) {
            if (g[d] == 0) continue;
            body += "d" + std::to_string(d + 1);
            if (g[d] > 1) body += "^" + std::to_string(g[d]);
            body += " ";
        }
        body += "delta";
        out.push_back(with_coeff(c, body));
    }
    (void)s;
    return join_terms(out);
}

std::string render(const Session& s, const Functional& f) {
    return "int{" + s.label_name(f.label) + "}: " + render(s, f.density);
}

std::string render(const Session& s, const HbarSeries& h) {
    std::vector<std::string> parts;
    for (int k = 0; k <= h.order; ++k) {
        if (h[k].is_zero()) continue;
        std::string c = render(s, h[k]);
        if (k == 0)
            parts.push_back(c);
        else
            parts.push_back(std::string("hbar") + (k > 1 ? "^" + std::to_string(k) : "") + "*(" + c + ")");
    }
    std::string out = join_terms(parts);
    if (!h.exact) out += " + O(hbar^" + std::to_string(h.order + 1) + ")";
    return out;
}

std::string to_json(const Session& s, const Expr& e, std::string_view kind) {
    return envelope(kind, s.dim, terms_json(s, e)).dump();
}

std::string to_json(const Session& s, const Kernel& k) {
    json arr = json::array();
    for (const auto& [g, c] : k.terms()) arr.push_back(json::array({coeff_json(c), index_json(g)}));
    return envelope("kernel", s.dim, arr).dump();
}

std::string to_json(const Session& s, const Functional& f) {
    return envelope("functional", s.dim, json{{"label", s.label_name(f.label)}, {"density", terms_json(s, f.density)}})
        .dump();
}

std::string to_json(const Session& s, const HbarSeries& h) {
    json coeffs = json::object();
    for (int k = 0; k <= h.order; ++k) coeffs[std::to_string(k)] = terms_json(s, h[k]);
    return envelope("series", s.dim, json{{"order", h.order}, {"exact", h.exact}, {"coeffs", coeffs}}).dump();
}

Expr expr_from_json(const Session& s, std::string_view text) {
    json j = parse_json(text);
    check_envelope(s, j, "");
    try {
        return terms_from_json(s, j.at("data"));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed expression JSON: ") + e.what(), 0);
    }
}

Kernel kernel_from_json(const Session& s, std::string_view text) {
    json j = parse_json(text);
    check_envelope(s, j, "kernel");
    Kernel k(s.dim);
    try {
        for (const auto& t : j.at("data")) k.add(index_from_json(s, t.at(1)), coeff_from_json(t.at(0)));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed kernel JSON: ") + e.what(), 0);
    }
    return k;
}

HbarSeries series_from_json(const Session& s, std::string_view text) {
    json j = parse_json(text);
    check_envelope(s, j, "series");
    try {
        const json& d = j.at("data");
        HbarSeries h(d.at("order").get<int>(), s.dim);
        h.exact = d.at("exact").get<bool>();
        for (const auto& [key, terms] : d.at("coeffs").items()) {
            int k = std::stoi(key);
            if (k < 0 || k > h.order) throw ParseError("series key out of range", 0);
            h[k] = terms_from_json(s, terms);
        }
        return h;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed series JSON: ") + e.what(), 0);
    }
}

Config config_from_json(std::string_view text) {
    json j = parse_json(text);
    if (!j.is_object() || j.value("kind", "") != "session") throw ParseError("expected a session config", 0);
    Config c;
    try {
        int dim = j.value("dim", 3);
        if (dim < 1 || dim > kMaxDim) throw DimensionMismatch("dimension out of range");
        c.session = Session::standard(dim);
        const json d = j.value("data", json::object());
        if (d.contains("fields")) {
            c.session.sorts.clear();
            for (const auto& f : d.at("fields")) {
                std::string kind = f.value("kind", "real");
                if (kind == "real")
                    c.session.declare_real_field(f.at("name").get<std::string>(), f.at("conjpair").get<std::string>());
                else if (kind == "complex")
                    c.session.declare_complex_field(f.at("name").get<std::string>());
                else
                    throw ParseError("unknown field kind '" + kind + "'", 0);
            }
        }
        if (d.contains("labels")) {
            c.session.labels = {""};
            for (const auto& l : d.at("labels")) c.session.labels.push_back(l.get<std::string>());
            if (c.session.labels.size() < 4) throw ParseError("at least three labels are needed", 0);
        }
        if (d.contains("params")) c.session.params = d.at("params").get<std::vector<std::string>>();
        if (d.contains("functions")) {
            c.session.functions.clear();
            for (const auto& f : d.at("functions")) {
                auto arg = c.session.find_sort(f.at("argument").get<std::string>());
                if (!arg) throw ParseError("unknown function argument sort", 0);
                c.session.functions.push_back(
                    {f.at("name").get<std::string>(), *arg, f.value<std::int16_t>("vanish", -1)});
            }
        }
        c.session.order = d.value("order", c.session.order);
        c.session.tolerance = d.value("tolerance", c.session.tolerance);
        c.session.seed = d.value("seed", c.session.seed);
        c.hamiltonian = d.value("hamiltonian", "");
        c.kernel = d.value("kernel", "");
        c.prefactor = d.value("prefactor", "");
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed session config: ") + e.what(), 0);
    }
    return c;
}

std::string config_to_json(const Config& c) {
    const Session& s = c.session;
    json fields = json::array();
    for (const auto& d : s.sorts) {
        if (d.kind == SortKind::Position)
            fields.push_back({{"name", d.name}, {"conjpair", s.sorts.at(d.partner).name}, {"kind", "real"}});
        else if (d.kind == SortKind::Holomorphic)
            fields.push_back({{"name", d.name}, {"kind", "complex"}});
    }
    json funcs = json::array();
    for (const auto& f : s.functions)
        funcs.push_back({{"name", f.name}, {"argument", s.sorts.at(f.argument).name}, {"vanish", f.vanish}});
    json data{{"fields", fields},
              {"labels", std::vector<std::string>(s.labels.begin() + 1, s.labels.end())},
              {"params", s.params},
              {"functions", funcs},
              {"order", s.order},
              {"tolerance", s.tolerance},
              {"seed", s.seed}};
    if (!c.hamiltonian.empty()) data["hamiltonian"] = c.hamiltonian;
    if (!c.kernel.empty()) data["kernel"] = c.kernel;
    if (!c.prefactor.empty()) data["prefactor"] = c.prefactor;
    return envelope("session", s.dim, data).dump(2);
}

}  // namespace fieldstar::io
