#include "fieldstar/models.hpp"

namespace fieldstar::models {

Expr field(SortId sort, int dim) { return Expr::jet(kFree, sort, MultiIndex(dim)); }

Expr potential(int dim, int order) {
    return Expr::atom(Atom::func(kFree, kPhi, dim, kPotential, static_cast<std::uint16_t>(order), kPotentialVanish),
                      dim);
}

Expr kg_density(int dim, bool with_potential, bool with_mass) {
    Expr pi = field(kPi, dim), phi = field(kPhi, dim);
    Expr quad = pi * pi;
    for (int i = 1; i <= dim; ++i) {
        Expr d = Expr::jet(kFree, kPhi, MultiIndex::unit(dim, i));
        quad += d * d;
    }
    if (with_mass) {
        Expr m = Expr::param(kMass, dim);
        quad += m * m * phi * phi;
    }
    Expr out = quad * Coeff::ratio(1, 2);
    if (with_potential) out += potential(dim);
    return out;
}

Expr nls_density(int dim, bool with_gradient, bool with_quartic) {
    Expr out(dim);
    if (with_gradient)
        for (int i = 1; i <= dim; ++i)
            out += Expr::jet(kFree, kPsi, MultiIndex::unit(dim, i)) * Expr::jet(kFree, kPsibar, MultiIndex::unit(dim, i));
    if (with_quartic) {
        Expr mod2 = field(kPsi, dim) * field(kPsibar, dim);
        out += Expr::param(kKappa, dim) * mod2 * mod2;
    }
    return out;
}

}  // namespace fieldstar::models
