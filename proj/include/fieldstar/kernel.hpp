#pragma once

#include "fieldstar/expr.hpp"

#include <map>
#include <utility>

namespace fieldstar {

enum class KernelClass { Symmetric, Antisymmetric, Mixed };

const char* to_string(KernelClass k);

/// Constant-coefficient kernel P(a,b) = sum_gamma c_gamma d_a^gamma delta(a - b).
class Kernel {
public:
    Kernel() = default;
    explicit Kernel(int dim) : dim_(dim) {}

    static Kernel delta(int dim, const Coeff& c = Coeff(1));
    static Kernel derivative(const MultiIndex& gamma, const Coeff& c = Coeff(1));

    int dim() const { return dim_; }
    const std::map<MultiIndex, Coeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const MultiIndex& gamma, const Coeff& c);

    Kernel& operator+=(const Kernel& o);
    friend Kernel operator+(Kernel a, const Kernel& b) { return a += b; }
    friend Kernel operator-(Kernel a, const Kernel& b) { return a += b * Coeff(-1); }
    friend Kernel operator*(Kernel a, const Coeff& c);
    friend bool operator==(const Kernel& a, const Kernel& b) { return a.terms_ == b.terms_; }

private:
    std::map<MultiIndex, Coeff> terms_;
    int dim_ = 0;
};

KernelClass classify(const Kernel& p);
/// (even part, odd part).
std::pair<Kernel, Kernel> split(const Kernel& p);
/// P(b,a) expressed at (a,b): c_gamma -> (-1)^|gamma| c_gamma.
Kernel transpose(const Kernel& p);
Kernel conj(const Kernel& p);

/// d_a^extra P(a,b) as canonical delta atoms.
Expr kernel_at(const Kernel& p, Label a, Label b, const MultiIndex& extra);
Expr kernel_at(const Kernel& p, Label a, Label b);

/// <P(x,y), A(x)> = integral P(x,y) A(x) dx as a density at the same label as A.
Expr pair_kernel(const Kernel& p, const Expr& a, Label at = kFree);

/// Integration by parts against a delta atom involving `a`, then a -> partner.
/// Every term must carry such an atom.
Expr integrate_out(const Expr& t, Label a);

/// Like integrate_out, but terms without a delta atom in `a` keep a pending
/// integral marker instead of failing.
Expr integrate(const Expr& t, Label a);

/// Resolves pending integrals whose label has acquired a delta atom.
Expr settle(const Expr& t);

}  // namespace fieldstar
