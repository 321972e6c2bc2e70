#include "fieldstar/poisson.hpp"

#include "fieldstar/error.hpp"

namespace fieldstar {

Sign bracket_sign(const Kernel& p) {
    switch (classify(p)) {
        case KernelClass::Symmetric:
            return Sign::Minus;
        case KernelClass::Antisymmetric:
            return Sign::Plus;
        case KernelClass::Mixed:
            break;
    }
    throw MixedKernel("mixed kernel: split it into symmetric and antisymmetric parts first");
}

namespace {

void accumulate(Graded& out, const MultiIndex& key, const Expr& e) {
    if (e.is_zero()) return;
    auto it = out.find(key);
    if (it == out.end()) {
        out.emplace(key, e);
        return;
    }
    it->second += e;
    if (it->second.is_zero()) out.erase(it);
}

void half_step(const Expr& e, const MultiIndex& c, Label a, SortId sa, Label b, SortId sb, const Coeff& sign,
               Graded& out) {
    for (const auto& alpha : jet_indices(e, a, sa)) {
        Expr e1 = partial(e, Atom::jet(a, sa, alpha));
        if (e1.is_zero()) continue;
        for (const auto& beta : jet_indices(e1, b, sb)) {
            Expr e2 = partial(e1, Atom::jet(b, sb, beta));
            accumulate(out, c + alpha + beta, e2 * (sign * Coeff(parity_sign(beta))));
        }
    }
}

Label fresh_label(const std::set<Label>& used) {
    Label l = 1;
    while (used.count(l)) ++l;
    return l;
}

}  // namespace

Graded sigma_step(const Graded& g, Label a, Label b, const Pairing& pr, Sign sign) {
    Graded out;
    const Coeff s(sign == Sign::Minus ? -1 : 1);
    for (const auto& [c, e] : g) {
        half_step(e, c, a, pr.first, b, pr.second, Coeff(1), out);
        half_step(e, c, a, pr.second, b, pr.first, s, out);
    }
    return out;
}

Expr contract(const Graded& g, const Kernel& p, Label a, Label b) {
    Expr out(p.dim());
    for (const auto& [c, e] : g) out += e * kernel_at(p, a, b, c);
    return out;
}

Expr bracket_placed(const Expr& f, Label a, const Expr& g, Label b, const Kernel& p, const Pairing& pr) {
    if (a == b) throw LabelError("bracket needs distinct labels");
    const Sign sign = bracket_sign(p);
    Expr prod = f * g;
    if (prod.is_zero()) return Expr(prod.dim());
    Graded start;
    start.emplace(MultiIndex(prod.dim() ? prod.dim() : p.dim()), prod);
    return contract(sigma_step(start, a, b, pr, sign), p, a, b);
}

Expr bracket_fn(const Expr& f, Label a, const Expr& g, Label b, const Kernel& p, const Pairing& pr) {
    if (!labels_of(f).empty() || !labels_of(g).empty())
        throw LabelError("bracket_fn expects free field expressions; use bracket_tensor for attached ones");
    return bracket_placed(place(f, a), a, place(g, b), b, p, pr);
}

Expr bracket_tensor(const Expr& h, Label c, const Expr& t, const Kernel& p, const Pairing& pr) {
    std::set<Label> ls = labels_of(t);
    if (ls.count(c)) throw LabelError("bracket label already used by the tensor");
    const Sign sign = bracket_sign(p);
    Expr prod = place(h, c) * t;
    Expr out(prod.dim());
    if (prod.is_zero()) return out;
    Graded start;
    start.emplace(MultiIndex(prod.dim()), prod);
    for (Label a : ls) out += contract(sigma_step(start, c, a, pr, sign), p, c, a);
    return out;
}

Expr jacobi_residual(const Expr& f, const Expr& g, const Expr& h, const Kernel& p, const Pairing& pr) {
    Expr r = bracket_tensor(h, kZ, bracket_fn(f, kX, g, kY, p, pr), p, pr);
    r += bracket_tensor(g, kY, bracket_fn(h, kZ, f, kX, p, pr), p, pr);
    r += bracket_tensor(f, kX, bracket_fn(g, kY, h, kZ, p, pr), p, pr);
    return r;
}

void require_condition_b(const Expr& density) {
    if (!eval_at_origin(density).condition_b())
        throw ConditionBViolation("density does not vanish at the jet origin");
}

Expr bracket_functional_density_definitional(const Functional& F, const Expr& g, Label y, const Kernel& p,
                                             const Pairing& pr) {
    if (F.label == y) throw LabelError("functional label collides with the density label");
    require_condition_b(F.density);
    return integrate_out(bracket_fn(F.density, F.label, g, y, p, pr), F.label);
}

Expr bracket_functional_density_closed(const Functional& F, const Expr& g, Label y, const Kernel& p,
                                       const Pairing& pr) {
    const Sign sign = bracket_sign(p);
    require_condition_b(F.density);
    Expr d_first = dual_power(F.density, {pr.first});
    Expr d_second = dual_power(F.density, {pr.second});
    Expr r = related_apply(g, {pr.second}, pair_kernel(p, d_first));
    Expr r2 = related_apply(g, {pr.first}, pair_kernel(p, d_second));
    r += r2 * Coeff(sign == Sign::Minus ? -1 : 1);
    return place(r, y);
}

Expr bracket_functional_density(const Functional& F, const Expr& g, Label y, const Kernel& p, const Pairing& pr) {
    Expr a = bracket_functional_density_definitional(F, g, y, p, pr);
    Expr b = bracket_functional_density_closed(F, g, y, p, pr);
    if (a != b) throw ConsistencyError("definitional and closed-form functional-density brackets differ");
    return a;
}

Functional bracket_functionals_definitional(const Functional& F, const Functional& G, const Kernel& p,
                                            const Pairing& pr) {
    Label y = G.label;
    if (y == F.label) y = fresh_label({F.label});
    require_condition_b(G.density);
    Expr d = bracket_functional_density_definitional(F, G.density, y, p, pr);
    return Functional{detach(d, y), y};
}

Functional bracket_functionals_closed(const Functional& F, const Functional& G, const Kernel& p,
                                      const Pairing& pr) {
    const Sign sign = bracket_sign(p);
    require_condition_b(F.density);
    require_condition_b(G.density);
    Expr r = dual_power(G.density, {pr.second}) * pair_kernel(p, dual_power(F.density, {pr.first}));
    Expr r2 = dual_power(G.density, {pr.first}) * pair_kernel(p, dual_power(F.density, {pr.second}));
    r += r2 * Coeff(sign == Sign::Minus ? -1 : 1);
    return Functional{r, G.label};
}

Functional bracket_functionals(const Functional& F, const Functional& G, const Kernel& p, const Pairing& pr) {
    Functional a = bracket_functionals_definitional(F, G, p, pr);
    Functional b = bracket_functionals_closed(F, G, p, pr);
    if (!equivalent(a, b)) throw ConsistencyError("definitional and closed-form functional brackets differ");
    return a;
}

bool equivalent_modulo_divergence(const Expr& a, const Expr& b) {
    Expr d = a - b;
    if (d.is_zero()) return true;
    for (SortId s : sorts_of(d))
        if (!variational_derivative(d, s).is_zero()) return false;
    return eval_at_origin(d).condition_b();
}

bool equivalent(const Functional& a, const Functional& b) {
    return equivalent_modulo_divergence(a.density, b.density);
}

Expr as_integral(const Functional& F) {
    return place(F.density, F.label) * Expr::atom(Atom::integral(F.label), F.density.dim());
}

Expr module_bracket(const Expr& h, Label c, const Expr& g, Label y, const Functional& F, const Kernel& p,
                    const Pairing& pr) {
    if (c == y || c == F.label || y == F.label) throw LabelError("labels must be distinct");
    require_condition_b(F.density);
    Expr t = place(g, y) * as_integral(F);
    return settle(bracket_tensor(h, c, t, p, pr));
}

Expr module_bracket_leibniz(const Expr& h, Label c, const Expr& g, Label y, const Functional& F, const Kernel& p,
                            const Pairing& pr) {
    if (c == y || c == F.label || y == F.label) throw LabelError("labels must be distinct");
    require_condition_b(F.density);
    Expr h_F = integrate_out(bracket_fn(h, c, F.density, F.label, p, pr), F.label);
    return place(g, y) * h_F + as_integral(F) * bracket_fn(h, c, g, y, p, pr);
}

Expr module_bracket_functional(const Functional& H, const Expr& g, Label y, const Functional& F, const Kernel& p,
                               const Pairing& pr) {
    if (y == F.label) throw LabelError("labels must be distinct");
    Functional h = H;
    h.label = fresh_label({y, F.label});
    Functional hf = bracket_functionals(h, F, p, pr);
    Expr hg = bracket_functional_density(h, g, y, p, pr);
    return place(g, y) * as_integral(hf) + as_integral(F) * hg;
}

}  // namespace fieldstar
