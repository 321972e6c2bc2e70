#pragma once

#include "fieldstar/coeff.hpp"
#include "fieldstar/poisson.hpp"

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace fieldstar::peierls {

/// Cauchy data of the Green function: corrected (Delta(0) = 0, d_t Delta(0) = delta) or swapped (delta, 0).
enum class Convention { Corrected, Swapped };

double omega(int k, double m);

/// Fourier coefficients on the 2pi torus: f(x) = scale * sum_{|k| <= M} c_k e^{ikx}.
/// Distributions (Green functions) use scale 1/(2pi), so convolution is a mode-wise product.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(int modes, double scale = 1.0);

    /// DFT of equispaced samples x_j = 2pi j / N, N > 2M.
    static SpectralField from_samples(int modes, const std::vector<double>& samples);
    static SpectralField from_function(int modes, const std::function<double(double)>& f, int samples = 0);

    int modes() const { return modes_; }
    double scale() const { return scale_; }
    std::complex<double>& operator[](int k) { return c_[static_cast<std::size_t>(k + modes_)]; }
    std::complex<double> operator[](int k) const { return c_[static_cast<std::size_t>(k + modes_)]; }

    double evaluate(double x) const;
    /// Largest deviation from conjugate symmetry c_{-k} = conj(c_k).
    double reality_defect() const;

private:
    int modes_ = 0;
    double scale_ = 1.0;
    std::vector<std::complex<double>> c_;
};

/// Mode-k Green function and its first two time derivatives.
struct ModeValue {
    double value = 0, dt = 0, dtt = 0;
};
ModeValue green_mode(int k, double m, double t, Convention conv = Convention::Corrected);

/// Delta(t, .) with mode coefficient sin(omega t)/omega (t when omega = 0).
SpectralField green_eval(double m, double t, int modes, Convention conv = Convention::Corrected);

/// max_k |d_t^2 Delta_k + omega_k^2 Delta_k|.
double green_pde_residual(double m, double t, int modes, Convention conv = Convention::Corrected);

/// phi(t) = Delta(t) * pi0 + d_t Delta(t) * phi0.
SpectralField cauchy_solve(const SpectralField& phi0, const SpectralField& pi0, double m, double t,
                           Convention conv = Convention::Corrected);
/// d_t phi(t) for the same data.
SpectralField cauchy_velocity(const SpectralField& phi0, const SpectralField& pi0, double m, double t,
                              Convention conv = Convention::Corrected);

/// sum_k |phidot_k|^2 + omega_k^2 |phi_k|^2.
double energy(const SpectralField& phi, const SpectralField& phidot, double m);

/// Symbolic mode function: sum c * omega^p * e^{i omega (a t + b s)}, exact in Q[i].
class ModeExpr {
public:
    using Key = std::array<int, 3>;  // (a, b, p)

    ModeExpr() = default;
    static ModeExpr term(int a, int b, int p, const Coeff& c);

    const std::map<Key, Coeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ModeExpr& operator+=(const ModeExpr& o);
    friend ModeExpr operator+(ModeExpr a, const ModeExpr& b) { return a += b; }
    friend ModeExpr operator-(ModeExpr a, const ModeExpr& b);
    friend ModeExpr operator*(const ModeExpr& a, const ModeExpr& b);
    friend ModeExpr operator*(ModeExpr a, const Coeff& c);
    friend bool operator==(const ModeExpr& a, const ModeExpr& b) { return a.terms_ == b.terms_; }

    /// d/dt (var 0) or d/ds (var 1).
    ModeExpr derivative(int var) const;
    /// Identify the two times (s := t).
    ModeExpr coincide() const;
    /// Exchange t and s.
    ModeExpr swap_times() const;
    std::complex<double> evaluate(double omega, double t, double s) const;
    std::string to_string() const;

private:
    std::map<Key, Coeff> terms_;
};

enum class Time { T, S, TMinusS };

/// Mode symbol of d_t^order Delta at the given time argument.
ModeExpr green_symbol(Time at, int order = 0, Convention conv = Convention::Corrected);

/// phi(time) = sum over Cauchy sorts of coefficient * (sort at time 0).
std::map<SortId, ModeExpr> field_propagator(Time at, const Pairing& pr, Convention conv = Convention::Corrected);

/// Coefficient c_ab of {a(x), b(y)}_delta = c_ab delta(x - y) for the Cauchy sorts.
Coeff basic_bracket(SortId a, SortId b, const Pairing& pr, int dim);

/// {phi(t,x), phi(s,y)} as a mode symbol times delta-normalized e^{ik(x-y)}.
ModeExpr peierls_bracket(const Pairing& pr, int dim, Convention conv = Convention::Corrected);

/// phi(t,x) * phi(s,y) = phi(t,x) phi(s,y) + hbar {phi(t,x), phi(s,y)}, built from the basic star products.
struct PeierlsStar {
    std::map<std::pair<SortId, SortId>, ModeExpr> product;  // hbar^0: coefficient of a0(x) b0(y)
    ModeExpr hbar1;                                         // hbar^1: kernel symbol
    bool exact = true;                                      // no hbar^2 or higher terms
    bool factorizes = false;   // hbar^0 equals the product of the two propagated fields
    bool matches_bracket = false;  // hbar^1 equals the Peierls bracket
};
PeierlsStar peierls_star(const Pairing& pr, int dim, int order = 6, Convention conv = Convention::Corrected);

/// hbar^1 coefficient of phi(t,x) * phi(s,y) - phi(s,y) * phi(t,x).
ModeExpr peierls_commutator(const Pairing& pr, int dim, int order = 6, Convention conv = Convention::Corrected);

}  // namespace fieldstar::peierls
