#include "doctest.h"
#include "helpers.hpp"

#include "fieldstar/peierls.hpp"

#include <cmath>
#include <numbers>

using namespace testing;
using namespace fieldstar::peierls;

namespace {

/// Classical RK4 for y'' = -w^2 y with y(0) = 0, y'(0) = 1.
double rk4_mode(double w, double t, int steps) {
    double y = 0, v = 1, h = t / steps;
    for (int i = 0; i < steps; ++i) {
        double k1y = v, k1v = -w * w * y;
        double k2y = v + h / 2 * k1v, k2v = -w * w * (y + h / 2 * k1y);
        double k3y = v + h / 2 * k2v, k3v = -w * w * (y + h / 2 * k2y);
        double k4y = v + h * k3v, k4v = -w * w * (y + h * k3y);
        y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
        v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
    return y;
}

}  // namespace

TEST_CASE("Green function modes") {
    CHECK(green_mode(0, 1.0, 0.8).value == doctest::Approx(std::sin(0.8)).epsilon(1e-14));
    CHECK(green_mode(0, 0.0, 0.8).value == doctest::Approx(0.8).epsilon(1e-14));
    for (int k = 0; k < 5; ++k) CHECK(green_mode(k, 1.0, 0.0).value == 0.0);
    CHECK(green_mode(3, 0.5, 0.0).dt == 1.0);
}

TEST_CASE("Green modes agree with RK4 integration") {
    for (double m : {0.0, 1.0}) {
        for (int k : {0, 1, 4}) {
            double t = 2.3;
            CHECK(green_mode(k, m, t).value == doctest::Approx(rk4_mode(omega(k, m), t, 4000)).epsilon(1e-9));
        }
    }
}

TEST_CASE("Green function PDE residual and oddness") {
    for (double m : {0.0, 1.0}) {
        for (double t : {0.5, 3.0, 9.7}) CHECK(green_pde_residual(m, t, 64) < 1e-10);
        SpectralField plus = green_eval(m, 1.7, 64), minus = green_eval(m, -1.7, 64);
        for (int k = -64; k <= 64; ++k) CHECK(std::abs(plus[k] + minus[k]) < 1e-14);
    }
}

TEST_CASE("Cauchy problem against d'Alembert") {
    const int M = 16;
    auto phi0 = SpectralField::from_function(M, [](double x) { return std::sin(x); });
    auto zero = SpectralField::from_function(M, [](double) { return 0.0; });
    for (double t : {0.0, 0.4, 2.5}) {
        SpectralField a = cauchy_solve(phi0, zero, 0.0, t), b = cauchy_solve(zero, phi0, 0.0, t);
        for (double x : {0.1, 1.3, 4.0}) {
            CHECK(std::abs(a.evaluate(x) - std::sin(x) * std::cos(t)) < 1e-10);
            CHECK(std::abs(b.evaluate(x) - std::sin(x) * std::sin(t)) < 1e-10);
        }
    }
    SpectralField at0 = cauchy_solve(phi0, zero, 1.0, 0.0);
    for (int k = -M; k <= M; ++k) CHECK(std::abs(at0[k] - phi0[k]) < 1e-15);
}

TEST_CASE("discrete energy is conserved") {
    const int M = 64;
    auto phi0 = SpectralField::from_function(M, [](double x) { return std::exp(std::cos(x)) - 1; });
    auto pi0 = SpectralField::from_function(M, [](double x) { return std::sin(2 * x) * std::cos(x); });
    for (double m : {0.0, 1.0}) {
        double e0 = energy(cauchy_solve(phi0, pi0, m, 0), cauchy_velocity(phi0, pi0, m, 0), m);
        for (double t = 0.5; t <= 10.0; t += 0.5) {
            double e = energy(cauchy_solve(phi0, pi0, m, t), cauchy_velocity(phi0, pi0, m, t), m);
            CHECK(std::abs(e - e0) / e0 < 1e-10);
        }
    }
}

TEST_CASE("the swapped Green convention contradicts the Cauchy data") {
    const int M = 8;
    auto phi0 = SpectralField::from_function(M, [](double x) { return std::sin(x); });
    auto pi0 = SpectralField::from_function(M, [](double x) { return std::cos(2 * x); });
    SpectralField at0 = cauchy_solve(phi0, pi0, 1.0, 0.0, Convention::Swapped);
    CHECK(std::abs(at0.evaluate(0.3) - std::sin(0.3)) > 0.1);
    CHECK(std::abs(at0.evaluate(0.3) - std::cos(0.6)) < 1e-12);
}

TEST_CASE("symbolic Peierls bracket") {
    ModeExpr b = peierls_bracket(kReal, 3);
    CHECK(b == green_symbol(Time::TMinusS) * Coeff(-1));
    CHECK(b.coincide().is_zero());
    CHECK(b.swap_times() == b * Coeff(-1));
    CHECK(b.evaluate(2.0, 1.5, 0.5).real() == doctest::Approx(-std::sin(2.0) / 2.0));
}

TEST_CASE("Peierls star product") {
    PeierlsStar st = peierls_star(kReal, 3);
    CHECK(st.exact);
    CHECK(st.factorizes);
    CHECK(st.matches_bracket);
    CHECK(st.hbar1 == peierls_bracket(kReal, 3));
    CHECK(peierls_commutator(kReal, 3) == green_symbol(Time::TMinusS) * Coeff(-2));
}

TEST_CASE("the swapped convention does not reproduce minus its own Green function") {
    ModeExpr b = peierls_bracket(kReal, 3, Convention::Swapped);
    CHECK_FALSE(b == green_symbol(Time::TMinusS, 0, Convention::Swapped) * Coeff(-1));
}

TEST_CASE("spectral fields from samples") {
    auto f = SpectralField::from_function(5, [](double x) { return 1 + std::cos(3 * x) - 0.5 * std::sin(x); });
    CHECK(f.reality_defect() < 1e-15);
    CHECK(f.evaluate(0.7) == doctest::Approx(1 + std::cos(2.1) - 0.5 * std::sin(0.7)).epsilon(1e-13));
    CHECK_THROWS(SpectralField::from_samples(5, std::vector<double>(10, 0.0)));
}
