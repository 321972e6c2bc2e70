#pragma once

#include "fieldstar/poisson.hpp"

#include <utility>
#include <vector>

namespace fieldstar {

/// Truncated formal series sum_k hbar^k c_k, k <= order.
struct HbarSeries {
    std::vector<Expr> coeffs;
    int order = 0;
    bool exact = true;

    HbarSeries() = default;
    HbarSeries(int order, int dim);
    /// The constant series e (exact).
    static HbarSeries of(const Expr& e, int order);

    const Expr& operator[](int k) const { return coeffs[static_cast<std::size_t>(k)]; }
    Expr& operator[](int k) { return coeffs[static_cast<std::size_t>(k)]; }
    bool is_zero() const;
    /// First k with a nonzero coefficient, -1 if none.
    int first_nonzero() const;
    /// Evaluation at hbar = 1 (formal sum of the stored coefficients).
    Expr at_one() const;

    friend HbarSeries operator-(const HbarSeries& a, const HbarSeries& b);
    friend HbarSeries operator+(const HbarSeries& a, const HbarSeries& b);
};

/// Cauchy product truncated at min of the orders.
HbarSeries multiply(const HbarSeries& a, const HbarSeries& b);

/// exp(hbar sigma_{a,b}) applied to every coefficient, kernel P(a,b) inserted once per power.
HbarSeries exp_sigma(const HbarSeries& s, Label a, Label b, const Kernel& p, const Pairing& pr, int order);

/// [sigma]^k (f@a g@b) for attached expressions.
Expr sigma_power(const Expr& f, Label a, const Expr& g, Label b, const Kernel& p, const Pairing& pr, int k);

HbarSeries star_fn(const Expr& f, Label a, const Expr& g, Label b, const Kernel& p, const Pairing& pr, int order);

/// Product over all cross pairs of exp(hbar sigma_{i,j}); `reverse` applies the factors in the opposite order.
HbarSeries star_grouped(const HbarSeries& left, const HbarSeries& right, const Kernel& p, const Pairing& pr,
                        int order, bool reverse = false);

/// Pairwise exponentials over i < j.
HbarSeries star_chain(const std::vector<std::pair<Expr, Label>>& factors, const Kernel& p, const Pairing& pr,
                      int order);

enum class Level { Function, Density, FunctionalDensity, FunctionalFunctionalDensity, Functionals };
const char* to_string(Level l);

/// f@x * (g@y * h@z) - (f@x * g@y) * h@z, integrated over the labels the level binds.
HbarSeries associativity_residual(const Expr& f, const Expr& g, const Expr& h, const Kernel& p, const Pairing& pr,
                                  int order, Level level);

/// Residual of the two exponential orderings for left * right.
HbarSeries exp_order_residual(const HbarSeries& left, const HbarSeries& right, const Kernel& p, const Pairing& pr,
                              int order);

/// Integrate every coefficient over a label (pending integrals for non-delta terms).
HbarSeries integrate(const HbarSeries& s, Label a);

HbarSeries star_functional_density_definitional(const Functional& F, const Expr& g, Label y, const Kernel& p,
                                                const Pairing& pr, int order);
/// Closed form F g + (exp(hbar Gamma) - 1)(f g), Gamma built from dual and related operators.
HbarSeries star_functional_density_gamma(const Functional& F, const Expr& g, Label y, const Kernel& p,
                                         const Pairing& pr, int order);
HbarSeries star_functional_density(const Functional& F, const Expr& g, Label y, const Kernel& p, const Pairing& pr,
                                   int order);

HbarSeries star_functionals_definitional(const Functional& F, const Functional& G, const Kernel& p,
                                         const Pairing& pr, int order);
/// Closed form F G + <P, (exp(hbar Xi) - 1) f g>.
HbarSeries star_functionals_xi(const Functional& F, const Functional& G, const Kernel& p, const Pairing& pr,
                               int order);
HbarSeries star_functionals(const Functional& F, const Functional& G, const Kernel& p, const Pairing& pr, int order);

/// Coefficientwise equality; terms of the form density@l * int(l) are compared modulo total divergence.
bool series_equivalent(const HbarSeries& a, const HbarSeries& b);
bool equivalent_integrated(const Expr& a, const Expr& b);

/// P + P^t on the minus branch, P - P^t on the plus branch.
Kernel semiclassical_kernel(const Kernel& p);

/// (f*g - g*f) - hbar {f,g}_{semiclassical kernel}; g*f puts g in the first slot at its own label.
HbarSeries commutator_semiclassical(const Expr& f, Label a, const Expr& g, Label b, const Kernel& p,
                                    const Pairing& pr, int order);

struct EomResult {
    Expr rhs;              // prefactor * {H, field}, as a free density
    HbarSeries commutator; // H * field - field * H
    bool star_route_agrees = false;
};

/// field * H with the density in the first slot, integrated over H's label.
HbarSeries star_density_functional(const Expr& g, Label y, const Functional& F, const Kernel& p, const Pairing& pr,
                                   int order);

EomResult equation_of_motion(const Functional& H, const Expr& field, const Kernel& p, const Pairing& pr,
                             const Coeff& prefactor, int order = 6);

}  // namespace fieldstar
