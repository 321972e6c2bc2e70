#include "fieldstar/complex.hpp"

#include "fieldstar/error.hpp"
#include "fieldstar/models.hpp"

namespace fieldstar {

Expr conj(const Expr& e, const Pairing& pr) {
    Expr out(e.dim());
    for (const auto& [m, c] : e.terms()) {
        Monomial swapped;
        Expr t(c.conj(), e.dim());
        for (const auto& [a, k] : m.factors) {
            Atom b = a;
            if (b.kind == AtomKind::Jet || b.kind == AtomKind::Func) {
                if (b.sort == pr.first)
                    b.sort = pr.second;
                else if (b.sort == pr.second)
                    b.sort = pr.first;
            }
            t *= pow(Expr::atom(b, e.dim()), k);
        }
        out += t;
    }
    return out;
}

Expr to_real(const Expr& e, const Pairing& complex_pr, const Pairing& real_pr) {
    return transform_atoms(e, [&](const Atom& a) {
        if (a.kind == AtomKind::Jet && (a.sort == complex_pr.first || a.sort == complex_pr.second)) {
            Expr u = Expr::jet(a.label, real_pr.first, a.index);
            Expr xi = Expr::jet(a.label, real_pr.second, a.index) * Coeff::i();
            return a.sort == complex_pr.first ? u + xi : u - xi;
        }
        if (a.kind == AtomKind::Func && (a.sort == complex_pr.first || a.sort == complex_pr.second))
            throw Error("function symbols of complex sorts have no real substitution");
        return Expr::atom(a, a.index.dim());
    });
}

Expr conjugation_residual(const Expr& f, const Expr& g, const Kernel& p, const Pairing& pr) {
    Expr lhs = conj(bracket_fn(f, kX, g, kY, p, pr), pr);
    Expr rhs = bracket_fn(conj(g, pr), kY, conj(f, pr), kX, conj(transpose(p)), pr);
    return lhs - rhs;
}

EquivalenceReport real_complex_equivalence(const Kernel& p, const Pairing& real_pr, const Pairing& complex_pr) {
    const int n = p.dim();
    Expr psi = to_real(Expr::jet(kFree, complex_pr.first, MultiIndex(n)), complex_pr, real_pr);
    Expr psibar = to_real(Expr::jet(kFree, complex_pr.second, MultiIndex(n)), complex_pr, real_pr);
    EquivalenceReport r;
    r.psi_psibar = bracket_fn(psi, kX, psibar, kY, p, real_pr) - kernel_at(p * Coeff(0, -2), kX, kY);
    r.psi_psi = bracket_fn(psi, kX, psi, kY, p, real_pr);
    r.psibar_psibar = bracket_fn(psibar, kX, psibar, kY, p, real_pr);
    return r;
}

Expr real_complex_substitution_residual(const Expr& f, const Expr& g, const Kernel& p, const Pairing& real_pr,
                                        const Pairing& complex_pr) {
    Expr real = bracket_fn(to_real(f, complex_pr, real_pr), kX, to_real(g, complex_pr, real_pr), kY, p, real_pr);
    Expr cplx = to_real(bracket_fn(f, kX, g, kY, p * Coeff(0, -2), complex_pr), complex_pr, real_pr);
    return real - cplx;
}

Expr nls_equation_of_motion(int dim, bool with_gradient, bool with_quartic) {
    Functional h{models::nls_density(dim, with_gradient, with_quartic), kX};
    Expr psi = models::field(models::kPsi, dim);
    return equation_of_motion(h, psi, Kernel::delta(dim, Coeff::i()), models::kComplexPairing, Coeff::i()).rhs;
}

}  // namespace fieldstar
