#pragma once

#include "fieldstar/expr.hpp"
#include "fieldstar/poisson.hpp"

namespace fieldstar::models {

/// Default sort, parameter and function identifiers shared by the session and the examples.
inline constexpr SortId kPhi = 0;
inline constexpr SortId kPi = 1;
inline constexpr SortId kPsi = 2;
inline constexpr SortId kPsibar = 3;
inline constexpr std::uint16_t kMass = 0;
inline constexpr std::uint16_t kKappa = 1;
inline constexpr std::uint16_t kPotential = 0;
/// U(s) = o(s^2): U, U' and U'' vanish at the origin.
inline constexpr std::int16_t kPotentialVanish = 3;

inline constexpr Pairing kRealPairing{kPhi, kPi};
inline constexpr Pairing kComplexPairing{kPsi, kPsibar};

/// Order-zero jet of a sort.
Expr field(SortId sort, int dim);
/// U^(order)(phi).
Expr potential(int dim, int order = 0);

/// 1/2 (pi^2 + sum_i phi_i^2 + m^2 phi^2) + U(phi).
Expr kg_density(int dim, bool with_potential = true, bool with_mass = true);

/// sum_i psi_i psibar_i + kappa (psi psibar)^2.
Expr nls_density(int dim, bool with_gradient = true, bool with_quartic = true);

}  // namespace fieldstar::models
