#pragma once

#include "fieldstar/star.hpp"

namespace fieldstar {

/// Complex conjugation: swaps the paired sorts and conjugates coefficients (parameters are real).
Expr conj(const Expr& e, const Pairing& pr);

/// z -> u + i xi, zbar -> u - i xi, index by index.
Expr to_real(const Expr& e, const Pairing& complex_pr, const Pairing& real_pr);

/// conj({f@x, g@y}_P) - {conj g@y, conj f@x}_{conj P^t}.
Expr conjugation_residual(const Expr& f, const Expr& g, const Kernel& p, const Pairing& pr);

struct EquivalenceReport {
    Expr psi_psibar;     // {psi, psibar} computed in real variables, minus -2iP
    Expr psi_psi;        // {psi, psi}
    Expr psibar_psibar;  // {psibar, psibar}
    bool zero() const { return psi_psibar.is_zero() && psi_psi.is_zero() && psibar_psibar.is_zero(); }
};

/// Basic brackets of psi = phi + i pi, psibar = phi - i pi under the real bracket with kernel P.
EquivalenceReport real_complex_equivalence(const Kernel& p, const Pairing& real_pr, const Pairing& complex_pr);

/// {f,g}_P in real variables minus the complex bracket with kernel -2iP, after substitution.
Expr real_complex_substitution_residual(const Expr& f, const Expr& g, const Kernel& p, const Pairing& real_pr,
                                        const Pairing& complex_pr);

/// Right-hand side of i psi_t = i {H, psi}_{i delta} for the NLS Hamiltonian.
Expr nls_equation_of_motion(int dim, bool with_gradient = true, bool with_quartic = true);

}  // namespace fieldstar
