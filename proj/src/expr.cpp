#include "fieldstar/expr.hpp"

#include "fieldstar/error.hpp"

#include <tuple>

namespace fieldstar {

Atom Atom::jet(Label label, SortId sort, const MultiIndex& alpha) {
    Atom a;
    a.kind = AtomKind::Jet;
    a.label = label;
    a.sort = sort;
    a.index = alpha;
    return a;
}

Atom Atom::func(Label label, SortId sort, int dim, std::uint16_t id, std::uint16_t order, std::int16_t vanish) {
    Atom a;
    a.kind = AtomKind::Func;
    a.label = label;
    a.sort = sort;
    a.id = id;
    a.order = order;
    a.vanish = vanish;
    a.index = MultiIndex(dim);
    return a;
}

Atom Atom::param(std::uint16_t id) {
    Atom a;
    a.kind = AtomKind::Param;
    a.id = id;
    return a;
}

Atom Atom::integral(Label label) {
    Atom a;
    a.kind = AtomKind::Integral;
    a.label = label;
    return a;
}

Atom Atom::argument() const { return Atom::jet(label, sort, MultiIndex(index.dim())); }

bool operator<(const Atom& a, const Atom& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    switch (a.kind) {
        case AtomKind::Jet:
            // Higher derivatives first inside one sort, so d^2 terms lead.
            return std::tie(a.label, a.sort, b.index) < std::tie(b.label, b.sort, a.index);
        case AtomKind::Func:
            return std::tie(a.label, a.sort, a.id, a.order, a.vanish, a.index) <
                   std::tie(b.label, b.sort, b.id, b.order, b.vanish, b.index);
        case AtomKind::Param:
            return a.id < b.id;
        case AtomKind::Delta:
            return std::tie(a.label, a.other, a.index) < std::tie(b.label, b.other, b.index);
        case AtomKind::DeltaAtZero:
            return a.index < b.index;
        case AtomKind::Integral:
            return a.label < b.label;
    }
    return false;
}

int Monomial::degree() const {
    int d = 0;
    for (const auto& [a, e] : factors)
        if (a.kind == AtomKind::Jet || a.kind == AtomKind::Func) d += static_cast<int>(e);
    return d;
}

bool Monomial::has_kind(AtomKind k) const {
    for (const auto& f : factors)
        if (f.first.kind == k) return true;
    return false;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    std::size_t n = std::min(a.factors.size(), b.factors.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [x, ex] = a.factors[i];
        const auto& [y, ey] = b.factors[i];
        if (x < y) return true;
        if (y < x) return false;
        if (ex != ey) return ex > ey;
    }
    return a.factors.size() < b.factors.size();
}

bool multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out) {
    out.factors.clear();
    out.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            out.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
            out.factors.push_back(b.factors[j++]);
        } else {
            if (a.factors[i].first.kind == AtomKind::Integral)
                throw LabelError("term integrated twice over the same label");
            out.factors.emplace_back(a.factors[i].first, a.factors[i].second + b.factors[j].second);
            ++i;
            ++j;
        }
    }
    return true;
}

Expr::Expr(const Coeff& c, int dim) : dim_(dim) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Expr Expr::atom(const Atom& a, int dim) {
    Expr e(dim);
    Monomial m;
    m.factors.emplace_back(a, 1);
    e.terms_.emplace(std::move(m), Coeff(1));
    return e;
}

Expr Expr::term(const Monomial& m, const Coeff& c, int dim) {
    Expr e(dim);
    if (!c.is_zero()) e.terms_.emplace(m, c);
    return e;
}

Expr Expr::jet(Label label, SortId sort, const MultiIndex& alpha) {
    return atom(Atom::jet(label, sort, alpha), alpha.dim());
}

Expr Expr::param(std::uint16_t id, int dim) { return atom(Atom::param(id), dim); }

bool Expr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Coeff Expr::constant_value() const {
    if (terms_.empty()) return Coeff(0);
    if (!is_constant()) throw Error("expression is not a constant");
    return terms_.begin()->second;
}

void Expr::adopt_dim(int d) {
    if (d == 0) return;
    if (dim_ == 0) {
        dim_ = d;
        return;
    }
    if (dim_ != d) throw DimensionMismatch("expressions over different dimensions");
}

void Expr::add_term(const Monomial& m, const Coeff& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Expr& Expr::operator+=(const Expr& o) {
    adopt_dim(o.dim_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Expr& Expr::operator-=(const Expr& o) {
    adopt_dim(o.dim_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Expr& Expr::operator*=(const Coeff& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Expr& Expr::operator*=(const Expr& o) {
    *this = *this * o;
    return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
    Expr r(a.dim_);
    r.adopt_dim(b.dim_);
    Monomial m;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            if (multiply_monomials(ma, mb, m)) r.add_term(m, ca * cb);
    return r;
}

Expr Expr::operator-() const {
    Expr r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Expr pow(const Expr& e, unsigned k) {
    Expr r(Coeff(1), e.dim());
    for (unsigned j = 0; j < k; ++j) r *= e;
    return r;
}

namespace {

/// The monomial with one unit removed from factor i.
Monomial lower(const Monomial& m, std::size_t i) {
    Monomial r = m;
    if (r.factors[i].second == 1)
        r.factors.erase(r.factors.begin() + static_cast<std::ptrdiff_t>(i));
    else
        --r.factors[i].second;
    return r;
}

/// Generic derivation: sum over factors of e * atom^(e-1) * d(atom) * rest.
template <typename F>
Expr derivation(const Expr& e, F&& datom) {
    Expr out(e.dim());
    Monomial prod;
    for (const auto& [m, c] : e.terms()) {
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            Expr d = datom(m.factors[i].first);
            if (d.is_zero()) continue;
            Monomial rest = lower(m, i);
            Coeff k = c * Coeff(static_cast<long>(m.factors[i].second));
            for (const auto& [dm, dc] : d.terms())
                if (multiply_monomials(rest, dm, prod)) out.add_term(prod, k * dc);
        }
    }
    return out;
}

}  // namespace

Expr partial(const Expr& e, const Atom& var) {
    if (var.kind != AtomKind::Jet) throw Error("partial derivative needs a jet variable");
    const bool zero_order = var.index.is_zero();
    return derivation(e, [&](const Atom& a) -> Expr {
        if (a.kind == AtomKind::Jet && a == var) return Expr(Coeff(1), e.dim());
        if (zero_order && a.kind == AtomKind::Func && a.label == var.label && a.sort == var.sort) {
            Atom b = a;
            ++b.order;
            return Expr::atom(b, e.dim());
        }
        return Expr(e.dim());
    });
}

Expr total_derivative(const Expr& e, Label label, int dir) {
    const int n = e.dim();
    if (n == 0) return Expr(0);
    const MultiIndex unit = MultiIndex::unit(n, dir);
    return derivation(e, [&](const Atom& a) -> Expr {
        switch (a.kind) {
            case AtomKind::Jet:
                if (a.label == label) return Expr::jet(a.label, a.sort, a.index + unit);
                break;
            case AtomKind::Func:
                if (a.label == label) {
                    Atom b = a;
                    ++b.order;
                    return Expr::atom(b, n) * Expr::jet(a.label, a.sort, unit);
                }
                break;
            case AtomKind::Delta:
                if (a.label == label) return delta(a.label, a.other, a.index + unit);
                if (a.other == label) return -delta(a.label, a.other, a.index + unit);
                break;
            default:
                break;
        }
        return Expr(n);
    });
}

Expr total_derivative(const Expr& e, Label label, const MultiIndex& alpha) {
    Expr r = e;
    for (int i = 0; i < alpha.dim(); ++i)
        for (int k = 0; k < alpha[i]; ++k) r = total_derivative(r, label, i + 1);
    return r;
}

Expr kernel_derivative(const Expr& e, Label label, int dir) {
    const int n = e.dim();
    if (n == 0) return Expr(0);
    const MultiIndex unit = MultiIndex::unit(n, dir);
    return derivation(e, [&](const Atom& a) -> Expr {
        if (a.kind == AtomKind::Delta) {
            if (a.label == label) return delta(a.label, a.other, a.index + unit);
            if (a.other == label) return -delta(a.label, a.other, a.index + unit);
        }
        return Expr(n);
    });
}

Expr delta(Label a, Label b, const MultiIndex& gamma) {
    const int n = gamma.dim();
    Atom at;
    at.index = gamma;
    if (a == b) {
        // (d^gamma delta)(0) vanishes for odd |gamma| since delta is even.
        if (gamma.order() % 2 != 0) return Expr(n);
        at.kind = AtomKind::DeltaAtZero;
        return Expr::atom(at, n);
    }
    at.kind = AtomKind::Delta;
    if (a < b) {
        at.label = a;
        at.other = b;
        return Expr::atom(at, n);
    }
    at.label = b;
    at.other = a;
    return Expr::atom(at, n) * Coeff(parity_sign(gamma));
}

Expr transform_atoms(const Expr& e, const std::function<Expr(const Atom&)>& f) {
    Expr out(e.dim());
    for (const auto& [m, c] : e.terms()) {
        Expr t(c, e.dim());
        for (const auto& [a, k] : m.factors) {
            t *= pow(f(a), k);
            if (t.is_zero()) break;
        }
        out += t;
    }
    return out;
}

Expr relabel(const Expr& e, Label from, Label to) {
    if (from == to) return e;
    const int n = e.dim();
    return transform_atoms(e, [&](const Atom& a) -> Expr {
        Atom b = a;
        switch (a.kind) {
            case AtomKind::Jet:
            case AtomKind::Func:
            case AtomKind::Integral:
                if (a.label == from) b.label = to;
                return Expr::atom(b, n);
            case AtomKind::Delta: {
                Label p = a.label == from ? to : a.label;
                Label q = a.other == from ? to : a.other;
                return delta(p, q, a.index);
            }
            default:
                return Expr::atom(b, n);
        }
    });
}

Expr detach(const Expr& e, Label at) {
    Expr r = relabel(e, at, kFree);
    for (const auto& [m, c] : r.terms())
        for (const auto& [a, k] : m.factors)
            if (a.kind == AtomKind::Delta || a.kind == AtomKind::Integral || a.kind == AtomKind::DeltaAtZero ||
                ((a.kind == AtomKind::Jet || a.kind == AtomKind::Func) && a.label != kFree))
                throw LabelError("expression is not a single-label density");
    return r;
}

std::set<Label> labels_of(const Expr& e) {
    std::set<Label> out;
    for (const auto& [m, c] : e.terms())
        for (const auto& [a, k] : m.factors) {
            switch (a.kind) {
                case AtomKind::Jet:
                case AtomKind::Func:
                case AtomKind::Integral:
                    if (a.label != kFree) out.insert(a.label);
                    break;
                case AtomKind::Delta:
                    out.insert(a.label);
                    out.insert(a.other);
                    break;
                default:
                    break;
            }
        }
    return out;
}

std::set<SortId> sorts_of(const Expr& e) {
    std::set<SortId> out;
    for (const auto& [m, c] : e.terms())
        for (const auto& [a, k] : m.factors)
            if (a.kind == AtomKind::Jet || a.kind == AtomKind::Func) out.insert(a.sort);
    return out;
}

std::set<MultiIndex> jet_indices(const Expr& e, Label label, SortId sort) {
    std::set<MultiIndex> out;
    for (const auto& [m, c] : e.terms())
        for (const auto& [a, k] : m.factors) {
            if (a.label != label || a.sort != sort) continue;
            if (a.kind == AtomKind::Jet) out.insert(a.index);
            if (a.kind == AtomKind::Func) out.insert(MultiIndex(a.index.dim()));
        }
    return out;
}

OriginValue eval_at_origin(const Expr& f) {
    OriginValue r{Expr(f.dim())};
    for (const auto& [m, c] : f.terms()) {
        bool vanishes = false;
        for (const auto& [a, k] : m.factors) {
            if (a.kind == AtomKind::Jet) {
                vanishes = true;
                break;
            }
            if (a.kind == AtomKind::Delta || a.kind == AtomKind::Integral || a.kind == AtomKind::DeltaAtZero)
                throw Error("origin value is defined for field expressions only");
        }
        if (vanishes) continue;
        for (const auto& [a, k] : m.factors) {
            if (a.kind != AtomKind::Func) continue;
            if (a.vanish < 0) throw MissingFlag("function symbol without a vanishing flag");
            if (a.order < a.vanish) {
                vanishes = true;
                break;
            }
        }
        if (!vanishes) r.value.add_term(m, c);
    }
    return r;
}

}  // namespace fieldstar
