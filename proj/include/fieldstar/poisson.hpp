#pragma once

#include "fieldstar/euler_lagrange.hpp"
#include "fieldstar/kernel.hpp"

namespace fieldstar {

inline constexpr Label kX = 1;
inline constexpr Label kY = 2;
inline constexpr Label kZ = 3;

/// Conjugate sort pair: (u, xi) for a real field, (z, zbar) for a complex one.
struct Pairing {
    SortId first = 0;
    SortId second = 1;
};

enum class Sign { Minus, Plus };

/// Minus for symmetric kernels, plus for antisymmetric ones; mixed kernels throw.
Sign bracket_sign(const Kernel& p);

/// One application of d_{first,a} d_{second,b} -/+ d_{second,a} d_{first,b}, keeping the
/// spatial derivatives as a symbol d_a^C (d_b^B is folded in as (-1)^|B| d_a^B).
Graded sigma_step(const Graded& g, Label a, Label b, const Pairing& pr, Sign sign);

/// Inserts d_a^C P(a,b) for every graded piece.
Expr contract(const Graded& g, const Kernel& p, Label a, Label b);

/// {f@a, g@b}_P for expressions already attached to their labels.
Expr bracket_placed(const Expr& f, Label a, const Expr& g, Label b, const Kernel& p, const Pairing& pr);

/// {f@a, g@b}_P for field expressions.
Expr bracket_fn(const Expr& f, Label a, const Expr& g, Label b, const Kernel& p, const Pairing& pr);

/// {h@c, T}: Leibniz over the labels of T, existing kernels inert.
Expr bracket_tensor(const Expr& h, Label c, const Expr& t, const Kernel& p, const Pairing& pr);

/// {h,{f,g}} + {g,{h,f}} + {f,{g,h}} with f@x, g@y, h@z.
Expr jacobi_residual(const Expr& f, const Expr& g, const Expr& h, const Kernel& p, const Pairing& pr);

/// F = integral of density over label.
struct Functional {
    Expr density;
    Label label = kX;
};

/// Throws ConditionBViolation when the density does not vanish at the origin.
void require_condition_b(const Expr& density);

/// {F, g@y}: result at label y, via the definitional route.
Expr bracket_functional_density_definitional(const Functional& F, const Expr& g, Label y, const Kernel& p,
                                             const Pairing& pr);
/// Closed form: d_{second,y}(g) <P, dF/d first> -/+ d_{first,y}(g) <P, dF/d second>.
Expr bracket_functional_density_closed(const Functional& F, const Expr& g, Label y, const Kernel& p,
                                       const Pairing& pr);
/// Both routes, checked against each other.
Expr bracket_functional_density(const Functional& F, const Expr& g, Label y, const Kernel& p, const Pairing& pr);

Functional bracket_functionals_definitional(const Functional& F, const Functional& G, const Kernel& p,
                                            const Pairing& pr);
Functional bracket_functionals_closed(const Functional& F, const Functional& G, const Kernel& p,
                                      const Pairing& pr);
Functional bracket_functionals(const Functional& F, const Functional& G, const Kernel& p, const Pairing& pr);

/// Euler-operator criterion: equal up to a total divergence.
bool equivalent_modulo_divergence(const Expr& a, const Expr& b);
bool equivalent(const Functional& a, const Functional& b);

/// Functional as a term with a pending integral: density@label * int(label).
Expr as_integral(const Functional& F);

/// {h@c, g@y * F} through the generic bracket with pending integrals.
Expr module_bracket(const Expr& h, Label c, const Expr& g, Label y, const Functional& F, const Kernel& p,
                    const Pairing& pr);
/// g{h,F} + F{h,g} assembled term by term.
Expr module_bracket_leibniz(const Expr& h, Label c, const Expr& g, Label y, const Functional& F, const Kernel& p,
                            const Pairing& pr);
/// {H, g@y * F} = g{H,F} + F{H,g}.
Expr module_bracket_functional(const Functional& H, const Expr& g, Label y, const Functional& F, const Kernel& p,
                               const Pairing& pr);

}  // namespace fieldstar
