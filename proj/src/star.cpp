#include "fieldstar/star.hpp"

#include "fieldstar/error.hpp"

#include <algorithm>

namespace fieldstar {

HbarSeries::HbarSeries(int order_, int dim) : coeffs(static_cast<std::size_t>(order_ + 1), Expr(dim)), order(order_) {}

HbarSeries HbarSeries::of(const Expr& e, int order) {
    HbarSeries s(order, e.dim());
    s[0] = e;
    return s;
}

bool HbarSeries::is_zero() const { return first_nonzero() < 0; }

int HbarSeries::first_nonzero() const {
    for (int k = 0; k <= order; ++k)
        if (!(*this)[k].is_zero()) return k;
    return -1;
}

Expr HbarSeries::at_one() const {
    Expr r;
    for (const auto& c : coeffs) r += c;
    return r;
}

HbarSeries operator-(const HbarSeries& a, const HbarSeries& b) {
    int k = std::min(a.order, b.order);
    HbarSeries r(k, 0);
    for (int j = 0; j <= k; ++j) r[j] = a[j] - b[j];
    r.exact = a.exact && b.exact && a.order == b.order;
    return r;
}

HbarSeries operator+(const HbarSeries& a, const HbarSeries& b) {
    int k = std::min(a.order, b.order);
    HbarSeries r(k, 0);
    for (int j = 0; j <= k; ++j) r[j] = a[j] + b[j];
    r.exact = a.exact && b.exact && a.order == b.order;
    return r;
}

HbarSeries multiply(const HbarSeries& a, const HbarSeries& b) {
    int k = std::min(a.order, b.order);
    HbarSeries r(k, 0);
    r.exact = a.exact && b.exact;
    for (int i = 0; i <= a.order; ++i)
        for (int j = 0; j <= b.order; ++j) {
            if (a[i].is_zero() || b[j].is_zero()) continue;
            if (i + j > k) {
                r.exact = false;
                continue;
            }
            r[i + j] += a[i] * b[j];
        }
    return r;
}

HbarSeries exp_sigma(const HbarSeries& s, Label a, Label b, const Kernel& p, const Pairing& pr, int order) {
    if (a == b) throw LabelError("sigma needs distinct labels");
    const Sign sign = bracket_sign(p);
    const int K = std::min(order, s.order);
    HbarSeries out(K, p.dim());
    out.exact = s.exact && s.order <= order;
    for (int j = 0; j <= K; ++j) {
        const Expr& c = s[j];
        if (c.is_zero()) continue;
        out[j] += c;
        Graded g;
        g.emplace(MultiIndex(c.dim() ? c.dim() : p.dim()), c);
        int k = 1;
        for (; k <= K - j; ++k) {
            g = sigma_step(g, a, b, pr, sign);
            if (g.empty()) break;
            out[j + k] += contract(g, p, a, b) * (Coeff(1) / factorial(k));
        }
        if (k > K - j && !g.empty() && !sigma_step(g, a, b, pr, sign).empty()) out.exact = false;
    }
    return out;
}

Expr sigma_power(const Expr& f, Label a, const Expr& g, Label b, const Kernel& p, const Pairing& pr, int k) {
    Expr prod = f * g;
    if (k == 0) return prod;
    const Sign sign = bracket_sign(p);
    Graded gr;
    if (prod.is_zero()) return prod;
    gr.emplace(MultiIndex(prod.dim()), prod);
    for (int j = 0; j < k && !gr.empty(); ++j) gr = sigma_step(gr, a, b, pr, sign);
    return contract(gr, p, a, b);
}

HbarSeries star_fn(const Expr& f, Label a, const Expr& g, Label b, const Kernel& p, const Pairing& pr, int order) {
    return exp_sigma(HbarSeries::of(place(f, a) * place(g, b), order), a, b, p, pr, order);
}

namespace {

std::set<Label> series_labels(const HbarSeries& s) {
    std::set<Label> out;
    for (const auto& c : s.coeffs) {
        auto l = labels_of(c);
        out.insert(l.begin(), l.end());
    }
    return out;
}

}  // namespace

HbarSeries star_grouped(const HbarSeries& left, const HbarSeries& right, const Kernel& p, const Pairing& pr,
                        int order, bool reverse) {
    std::set<Label> l1 = series_labels(left), l2 = series_labels(right);
    for (Label l : l1)
        if (l2.count(l)) throw LabelError("groups share a label");
    std::vector<std::pair<Label, Label>> pairs;
    for (Label i : l1)
        for (Label j : l2) pairs.emplace_back(i, j);
    if (reverse) std::reverse(pairs.begin(), pairs.end());
    HbarSeries s = multiply(left, right);
    for (const auto& [i, j] : pairs) s = exp_sigma(s, i, j, p, pr, order);
    return s;
}

HbarSeries star_chain(const std::vector<std::pair<Expr, Label>>& factors, const Kernel& p, const Pairing& pr,
                      int order) {
    Expr prod(Coeff(1), p.dim());
    std::set<Label> seen;
    for (const auto& [f, l] : factors) {
        if (!seen.insert(l).second) throw LabelError("chain factors need distinct labels");
        prod *= place(f, l);
    }
    HbarSeries s = HbarSeries::of(prod, order);
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            s = exp_sigma(s, factors[i].second, factors[j].second, p, pr, order);
    return s;
}

const char* to_string(Level l) {
    switch (l) {
        case Level::Function:
            return "function";
        case Level::Density:
            return "density";
        case Level::FunctionalDensity:
            return "functional-density";
        case Level::FunctionalFunctionalDensity:
            return "functional-functional-density";
        case Level::Functionals:
            return "functionals";
    }
    return "?";
}

HbarSeries integrate(const HbarSeries& s, Label a) {
    HbarSeries r = s;
    for (auto& c : r.coeffs) c = settle(integrate(c, a));
    return r;
}

HbarSeries associativity_residual(const Expr& f, const Expr& g, const Expr& h, const Kernel& p, const Pairing& pr,
                                  int order, Level level) {
    if (level == Level::FunctionalDensity || level == Level::FunctionalFunctionalDensity ||
        level == Level::Functionals)
        require_condition_b(f);
    if (level == Level::FunctionalFunctionalDensity || level == Level::Functionals) require_condition_b(g);
    if (level == Level::Functionals) require_condition_b(h);

    HbarSeries lhs = star_grouped(HbarSeries::of(place(f, kX), order), star_fn(g, kY, h, kZ, p, pr, order), p, pr,
                                  order);
    HbarSeries rhs = star_grouped(star_fn(f, kX, g, kY, p, pr, order), HbarSeries::of(place(h, kZ), order), p, pr,
                                  order);
    std::vector<Label> bound;
    if (level == Level::FunctionalDensity) bound = {kX};
    if (level == Level::FunctionalFunctionalDensity) bound = {kX, kY};
    if (level == Level::Functionals) bound = {kX, kY, kZ};
    for (Label l : bound) {
        lhs = integrate(lhs, l);
        rhs = integrate(rhs, l);
    }
    return lhs - rhs;
}

HbarSeries exp_order_residual(const HbarSeries& left, const HbarSeries& right, const Kernel& p, const Pairing& pr,
                              int order) {
    return star_grouped(left, right, p, pr, order, false) - star_grouped(left, right, p, pr, order, true);
}

HbarSeries star_functional_density_definitional(const Functional& F, const Expr& g, Label y, const Kernel& p,
                                                const Pairing& pr, int order) {
    if (F.label == y) throw LabelError("functional label collides with the density label");
    require_condition_b(F.density);
    return integrate(star_fn(F.density, F.label, g, y, p, pr, order), F.label);
}

namespace {

Label fresh_label(Label used) { return used == kY ? kZ : kY; }

std::vector<SortId> repeat(SortId a, int i, SortId b, int j) {
    std::vector<SortId> v(static_cast<std::size_t>(i), a);
    v.insert(v.end(), static_cast<std::size_t>(j), b);
    return v;
}

/// k-th power of the closed-form generator; `functional_second` chooses Xi (dual on both sides)
/// over Gamma (related operator on the density side).
Expr closed_power(const Expr& f, const Expr& g, const Kernel& p, const Pairing& pr, Sign sign, int k,
                  bool functional_second) {
    Expr out(f.dim());
    for (int i = 0; i <= k; ++i) {
        int j = k - i;
        Expr lf = dual_power(f, repeat(pr.first, i, pr.second, j));
        if (lf.is_zero()) continue;
        Expr paired = pair_kernel(p, lf);
        std::vector<SortId> gs = repeat(pr.second, i, pr.first, j);
        Expr term = functional_second ? dual_power(g, gs) * paired : related_apply(g, gs, paired);
        Coeff c = binomial(k, i);
        if (sign == Sign::Minus && j % 2 == 1) c = -c;
        out += term * c;
    }
    return out;
}

int closed_degree_bound(const Expr& f) {
    int d = 0;
    for (const auto& [m, c] : f.terms()) {
        if (m.has_kind(AtomKind::Func)) return -1;
        d = std::max(d, m.degree());
    }
    return d;
}

}  // namespace

HbarSeries star_functional_density_gamma(const Functional& F, const Expr& g, Label y, const Kernel& p,
                                         const Pairing& pr, int order) {
    const Sign sign = bracket_sign(p);
    require_condition_b(F.density);
    HbarSeries s(order, F.density.dim());
    s[0] = as_integral(F) * place(g, y);
    for (int k = 1; k <= order; ++k)
        s[k] = place(closed_power(F.density, g, p, pr, sign, k, false), y) * (Coeff(1) / factorial(k));
    int df = closed_degree_bound(F.density), dg = closed_degree_bound(g);
    s.exact = df >= 0 && dg >= 0 && std::min(df, dg) <= order;
    return s;
}

HbarSeries star_functional_density(const Functional& F, const Expr& g, Label y, const Kernel& p, const Pairing& pr,
                                   int order) {
    HbarSeries a = star_functional_density_definitional(F, g, y, p, pr, order);
    HbarSeries b = star_functional_density_gamma(F, g, y, p, pr, order);
    if (!(a - b).is_zero()) throw ConsistencyError("definitional and Gamma star products differ");
    return a;
}

HbarSeries star_functionals_definitional(const Functional& F, const Functional& G, const Kernel& p,
                                         const Pairing& pr, int order) {
    if (F.label == G.label)
        return star_functionals_definitional(F, Functional{G.density, fresh_label(F.label)}, p, pr, order);
    require_condition_b(F.density);
    require_condition_b(G.density);
    HbarSeries s = integrate(star_fn(F.density, F.label, G.density, G.label, p, pr, order), F.label);
    return integrate(s, G.label);
}

HbarSeries star_functionals_xi(const Functional& F, const Functional& G, const Kernel& p, const Pairing& pr,
                               int order) {
    if (F.label == G.label) return star_functionals_xi(F, Functional{G.density, fresh_label(F.label)}, p, pr, order);
    const Sign sign = bracket_sign(p);
    require_condition_b(F.density);
    require_condition_b(G.density);
    HbarSeries s(order, F.density.dim());
    s[0] = as_integral(F) * as_integral(G);
    for (int k = 1; k <= order; ++k) {
        Expr d = closed_power(F.density, G.density, p, pr, sign, k, true) * (Coeff(1) / factorial(k));
        s[k] = as_integral(Functional{d, G.label});
    }
    int df = closed_degree_bound(F.density), dg = closed_degree_bound(G.density);
    s.exact = df >= 0 && dg >= 0 && std::min(df, dg) <= order;
    return s;
}

HbarSeries star_functionals(const Functional& F, const Functional& G, const Kernel& p, const Pairing& pr, int order) {
    HbarSeries a = star_functionals_definitional(F, G, p, pr, order);
    HbarSeries b = star_functionals_xi(F, G, p, pr, order);
    if (!series_equivalent(a, b)) throw ConsistencyError("definitional and Xi star products differ");
    return a;
}

namespace {

/// Splits e into (single-label integrated densities by label, everything else).
void split_integrated(const Expr& e, std::map<Label, Expr>& dens, Expr& rest) {
    for (const auto& [m, c] : e.terms()) {
        Label bound = kFree;
        int n_int = 0;
        bool single = true;
        for (const auto& [a, k] : m.factors)
            if (a.kind == AtomKind::Integral) {
                bound = a.label;
                ++n_int;
            }
        if (n_int == 1) {
            for (const auto& [a, k] : m.factors) {
                if (a.kind == AtomKind::Integral || a.kind == AtomKind::Param) continue;
                if ((a.kind == AtomKind::Jet || a.kind == AtomKind::Func) && a.label == bound) continue;
                single = false;
            }
        }
        if (n_int == 1 && single) {
            Monomial body;
            for (const auto& f : m.factors)
                if (f.first.kind != AtomKind::Integral) body.factors.push_back(f);
            auto [it, ins] = dens.try_emplace(bound, Expr(e.dim()));
            it->second += detach(Expr::term(body, c, e.dim()), bound);
        } else {
            rest.add_term(m, c);
        }
    }
}

}  // namespace

bool equivalent_integrated(const Expr& a, const Expr& b) {
    Expr d = a - b;
    std::map<Label, Expr> dens;
    Expr rest(d.dim());
    split_integrated(d, dens, rest);
    if (!rest.is_zero()) return false;
    Expr total(d.dim());
    for (const auto& [l, e] : dens) total += e;  // bound labels are dummies
    return equivalent_modulo_divergence(total, Expr(d.dim()));
}

bool series_equivalent(const HbarSeries& a, const HbarSeries& b) {
    int k = std::min(a.order, b.order);
    for (int j = 0; j <= k; ++j)
        if (!equivalent_integrated(a[j], b[j])) return false;
    return true;
}

Kernel semiclassical_kernel(const Kernel& p) {
    return bracket_sign(p) == Sign::Minus ? p + transpose(p) : p - transpose(p);
}

HbarSeries commutator_semiclassical(const Expr& f, Label a, const Expr& g, Label b, const Kernel& p,
                                    const Pairing& pr, int order) {
    HbarSeries fg = star_fn(f, a, g, b, p, pr, order);
    HbarSeries gf = exp_sigma(HbarSeries::of(place(g, b) * place(f, a), order), b, a, p, pr, order);
    HbarSeries r = fg - gf;
    if (order >= 1) r[1] -= bracket_fn(f, a, g, b, semiclassical_kernel(p), pr);
    return r;
}

HbarSeries star_density_functional(const Expr& g, Label y, const Functional& F, const Kernel& p, const Pairing& pr,
                                   int order) {
    if (F.label == y) throw LabelError("functional label collides with the density label");
    require_condition_b(F.density);
    HbarSeries s =
        exp_sigma(HbarSeries::of(place(g, y) * place(F.density, F.label), order), y, F.label, p, pr, order);
    return integrate(s, F.label);
}

EomResult equation_of_motion(const Functional& H, const Expr& field, const Kernel& p, const Pairing& pr,
                             const Coeff& prefactor, int order) {
    Functional h = H;
    const Label y = kY;
    if (h.label == y) h.label = kX;
    EomResult r;
    r.rhs = detach(bracket_functional_density(h, field, y, p, pr), y) * prefactor;
    r.commutator = star_functional_density_definitional(h, field, y, p, pr, order) -
                   star_density_functional(field, y, h, p, pr, order);
    Expr expected = bracket_functional_density(h, field, y, semiclassical_kernel(p), pr);
    r.star_route_agrees = order >= 1 && r.commutator[0].is_zero() && r.commutator[1] == expected;
    return r;
}

}  // namespace fieldstar
