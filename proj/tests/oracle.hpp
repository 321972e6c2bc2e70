#pragma once

/// Floating-point oracles: trigonometric fields with analytic derivatives, pointwise evaluation of
/// expressions, finite differences, periodic quadrature and a band-limited delta.

#include "fieldstar/expr.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using fieldstar::Atom;
using fieldstar::AtomKind;
using fieldstar::Expr;
using fieldstar::MultiIndex;
using fieldstar::SortId;
using cplx = std::complex<double>;

/// f(x) = sum_j a_j sin(k_j . x + p_j) with integer wave vectors (periodic on the 2pi torus).
struct TrigField {
    struct Mode {
        std::vector<int> k;
        double a = 0, p = 0;
    };
    std::vector<Mode> modes;

    /// d^alpha f at x.
    double derivative(const MultiIndex& alpha, const std::vector<double>& x) const {
        double v = 0;
        for (const Mode& m : modes) {
            double phase = m.p, scale = m.a;
            for (std::size_t i = 0; i < x.size(); ++i) {
                phase += m.k[i] * x[i];
                scale *= std::pow(static_cast<double>(m.k[i]), alpha[static_cast<int>(i)]);
            }
            v += scale * std::sin(phase + alpha.order() * std::numbers::pi / 2);
        }
        return v;
    }

    static TrigField random(std::mt19937_64& rng, int dim, int count = 3, int max_k = 3) {
        std::uniform_int_distribution<int> kd(-max_k, max_k);
        std::uniform_real_distribution<double> ud(-1.0, 1.0), pd(0.0, 2 * std::numbers::pi);
        TrigField f;
        for (int j = 0; j < count; ++j) {
            Mode m;
            for (int i = 0; i < dim; ++i) m.k.push_back(kd(rng));
            m.a = ud(rng);
            m.p = pd(rng);
            f.modes.push_back(m);
        }
        return f;
    }
};

/// k-th derivative of sin, the stand-in for the function symbol U.
inline double sin_derivative(int k, double s) { return std::sin(s + k * std::numbers::pi / 2); }

struct Environment {
    std::map<SortId, TrigField> fields;
    std::map<std::uint16_t, double> params;
    /// Added to each field: f + eps * variation[sort].
    std::map<SortId, TrigField> variation;
    double eps = 0;

    double jet(SortId s, const MultiIndex& a, const std::vector<double>& x) const {
        double v = fields.at(s).derivative(a, x);
        if (eps != 0 && variation.count(s)) v += eps * variation.at(s).derivative(a, x);
        return v;
    }
};

/// Value of a free-label expression at a point; kernel atoms are not allowed.
inline cplx evaluate(const Expr& e, const Environment& env, const std::vector<double>& x) {
    cplx total = 0;
    for (const auto& [m, c] : e.terms()) {
        cplx term(c.re().get_d(), c.im().get_d());
        for (const auto& [a, k] : m.factors) {
            double v = 0;
            switch (a.kind) {
                case AtomKind::Jet:
                    v = env.jet(a.sort, a.index, x);
                    break;
                case AtomKind::Func:
                    v = sin_derivative(a.order, env.jet(a.sort, MultiIndex(a.index.dim()), x));
                    break;
                case AtomKind::Param:
                    v = env.params.at(a.id);
                    break;
                default:
                    throw std::runtime_error("oracle cannot evaluate kernel atoms");
            }
            term *= std::pow(v, static_cast<int>(k));
        }
        total += term;
    }
    return total;
}

/// Central difference of x -> evaluate(e, x) along direction dir (1-based).
inline cplx central_difference(const Expr& e, const Environment& env, std::vector<double> x, int dir, double h) {
    x[static_cast<std::size_t>(dir - 1)] += h;
    cplx up = evaluate(e, env, x);
    x[static_cast<std::size_t>(dir - 1)] -= 2 * h;
    cplx down = evaluate(e, env, x);
    return (up - down) / (2 * h);
}

/// Trapezoid rule on the 1D torus with n points.
template <class F>
cplx integrate_torus(F&& f, int n) {
    cplx acc = 0;
    const double h = 2 * std::numbers::pi / n;
    for (int j = 0; j < n; ++j) acc += f(j * h);
    return acc * h;
}

/// d^order of the band-limited delta (1/2pi) sum_{|k|<=M} e^{ikx} on the 1D torus.
inline double band_delta(int order, double x, int modes) {
    double v = 1.0 / (2 * std::numbers::pi);
    if (order > 0) v = 0;
    for (int k = 1; k <= modes; ++k)
        v += std::pow(static_cast<double>(k), order) * std::cos(k * x + order * std::numbers::pi / 2) / std::numbers::pi;
    return v;
}

struct GateauxSample {
    cplx symbolic;   // integral of the variational derivative times the direction
    cplx numeric;    // finite-difference derivative of the integrated density
    double scale;    // integral of |variational derivative * direction|
    /// Relative to the scale; absolute when the variational derivative vanishes identically.
    double relative_error() const { return std::abs(symbolic - numeric) / (scale > 0 ? scale : 1.0); }
};

/// d/de int f(phi + e eta) dx at e = 0 on the 1D torus (fourth-order stencil) against int vd * eta dx.
inline GateauxSample gateaux(const Expr& density, const Expr& vd, SortId sort, Environment env, const TrigField& eta,
                             int n = 256, double step = 1e-3) {
    env.variation[sort] = eta;
    auto functional = [&](double e) {
        env.eps = e;
        return integrate_torus([&](double x) { return evaluate(density, env, {x}); }, n);
    };
    GateauxSample g;
    g.numeric = (-functional(2 * step) + 8.0 * functional(step) - 8.0 * functional(-step) + functional(-2 * step)) /
                (12 * step);
    env.eps = 0;
    const MultiIndex zero(1);
    g.symbolic = integrate_torus([&](double x) { return evaluate(vd, env, {x}) * eta.derivative(zero, {x}); }, n);
    g.scale = integrate_torus(
                  [&](double x) { return cplx(std::abs(evaluate(vd, env, {x}) * eta.derivative(zero, {x}))); }, n)
                  .real();
    return g;
}

}  // namespace oracle
