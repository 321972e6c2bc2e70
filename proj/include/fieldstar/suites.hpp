#pragma once

#include "fieldstar/euler_lagrange.hpp"
#include "fieldstar/session.hpp"
#include "fieldstar/star.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fieldstar::suites {

/// Shape of random Hamiltonian functions: monomials in the two paired sorts.
struct PolySpec {
    int dim = 1;
    Pairing pairing;
    int max_degree = 3;
    int max_jet_order = 1;
    int max_terms = 3;
    int coeff_range = 3;
    bool complex_coeffs = false;
};

/// Seeded source of random expressions, kernels and operators.
class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi);
    Coeff coefficient(int range, bool complex);
    MultiIndex index(int dim, int max_order);
    /// Nonzero polynomial without constant term (so condition B holds).
    Expr polynomial(const PolySpec& spec);
    /// Random kernel of one class with derivative order <= max_order.
    Kernel kernel(int dim, KernelClass cls, int max_order, bool complex_coeffs = false);
    /// Sum of up to two compositions of at most two generators at the label.
    ELOperator el_operator(int dim, const Pairing& pr, Label label, int max_order);
    /// Like el_operator, but generators are drawn from the jet variables of f (one in four stays random).
    ELOperator el_operator_for(const Expr& f, const Pairing& pr, Label label, int max_order);

private:
    std::mt19937_64 rng_;
};

struct SuiteResult {
    std::string name;
    int trials = 0;
    int passed = 0;
    std::string failure;  // first nonzero residual term, rendered
    bool ok() const { return trials > 0 && passed == trials && failure.empty(); }
    /// "name: passed/trials" plus the failure when present.
    std::string summary() const;
};

struct SuiteOptions {
    int trials = 50;
    std::uint64_t seed = 1;
    int order = 4;
    PolySpec poly;
};

/// jacobi_residual == 0.
SuiteResult jacobi(const Session& s, const Kernel& p, const SuiteOptions& o);
/// Associativity residual == 0 at one level.
SuiteResult associativity(const Session& s, const Kernel& p, Level level, const SuiteOptions& o);
/// duality_residual == 0 for random operators and d^k powers, k <= 3.
SuiteResult duality(const Session& s, const SuiteOptions& o);
/// Closed-form routes agree with the definitional ones: which in {"bracket-density", "bracket-functionals",
/// "gamma", "xi"}.
SuiteResult closed_form(const Session& s, const Kernel& p, const std::string& which, const SuiteOptions& o);
/// hbar^0 and hbar^1 of the semiclassical residual vanish.
SuiteResult semiclassical(const Session& s, const Kernel& p, const SuiteOptions& o);
/// Basic bracket identities, substitution identity and conjugation residual; symmetric kernel.
SuiteResult complex_equivalence(const Session& s, const Kernel& p, const SuiteOptions& o);
/// Exp-order commutation residual for grouped products.
SuiteResult exp_order(const Session& s, const Kernel& p, const SuiteOptions& o);

struct PeierlsOptions {
    int modes = 64;
    double pde_tol = 1e-10;
    double cauchy_tol = 1e-10;
    double energy_tol = 1e-8;
};
/// PDE residual, d'Alembert match, energy drift and the symbolic identities.
SuiteResult peierls(const Session& s, const PeierlsOptions& o);

/// First nonzero term of a residual, rendered; empty when zero.
std::string first_term(const Session& s, const Expr& e);
std::string first_term(const Session& s, const HbarSeries& h);

}  // namespace fieldstar::suites
