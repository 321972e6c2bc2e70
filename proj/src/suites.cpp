#include "fieldstar/suites.hpp"

#include "fieldstar/complex.hpp"
#include "fieldstar/error.hpp"
#include "fieldstar/io.hpp"
#include "fieldstar/models.hpp"
#include "fieldstar/peierls.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace fieldstar::suites {

int Generator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Coeff Generator::coefficient(int range, bool complex) {
    for (;;) {
        Coeff c(uniform(-range, range));
        if (complex) c += Coeff(uniform(-range, range)) * Coeff::i();
        if (!c.is_zero()) return c;
    }
}

MultiIndex Generator::index(int dim, int max_order) {
    MultiIndex a(dim);
    int order = uniform(0, max_order);
    for (int j = 0; j < order; ++j) {
        int d = uniform(0, dim - 1);
        a.set(d, a[d] + 1);
    }
    return a;
}

Expr Generator::polynomial(const PolySpec& spec) {
    for (;;) {
        Expr out(spec.dim);
        int terms = uniform(1, spec.max_terms);
        for (int t = 0; t < terms; ++t) {
            Expr m(coefficient(spec.coeff_range, spec.complex_coeffs), spec.dim);
            int degree = uniform(1, spec.max_degree);
            for (int j = 0; j < degree; ++j) {
                SortId sort = uniform(0, 1) == 0 ? spec.pairing.first : spec.pairing.second;
                m *= Expr::jet(kFree, sort, index(spec.dim, spec.max_jet_order));
            }
            out += m;
        }
        if (!out.is_zero()) return out;
    }
}

Kernel Generator::kernel(int dim, KernelClass cls, int max_order, bool complex_coeffs) {
    for (;;) {
        Kernel k(dim);
        int terms = uniform(1, 2);
        for (int t = 0; t < terms; ++t) {
            int order = uniform(0, max_order);
            if (cls == KernelClass::Symmetric && order % 2 == 1) --order;
            if (cls == KernelClass::Antisymmetric && order % 2 == 0) order = order == 0 ? 1 : order - 1;
            MultiIndex g(dim);
            for (int j = 0; j < order; ++j) {
                int d = uniform(0, dim - 1);
                g.set(d, g[d] + 1);
            }
            k.add(g, coefficient(3, complex_coeffs));
        }
        if (!k.is_zero()) return k;
    }
}

ELOperator Generator::el_operator(int dim, const Pairing& pr, Label label, int max_order) {
    ELOperator op(label);
    int terms = uniform(1, 2);
    for (int t = 0; t < terms; ++t) {
        ELOperator m = ELOperator::identity(label);
        int gens = uniform(1, 2);
        for (int j = 0; j < gens; ++j) {
            SortId sort = uniform(0, 1) == 0 ? pr.first : pr.second;
            m = m * ELOperator::generator(label, sort, index(dim, max_order));
        }
        op += m * coefficient(3, false);
    }
    return op;
}

ELOperator Generator::el_operator_for(const Expr& f, const Pairing& pr, Label label, int max_order) {
    std::vector<std::pair<SortId, MultiIndex>> jets;
    for (SortId sort : {pr.first, pr.second})
        for (const MultiIndex& a : jet_indices(f, kFree, sort)) jets.emplace_back(sort, a);
    const int dim = f.dim() > 0 ? f.dim() : 1;
    if (jets.empty()) return el_operator(dim, pr, label, max_order);
    ELOperator op(label);
    int terms = uniform(1, 2);
    for (int t = 0; t < terms; ++t) {
        ELOperator m = ELOperator::identity(label);
        int gens = uniform(1, 2);
        for (int j = 0; j < gens; ++j) {
            if (uniform(0, 3) == 0) {
                SortId sort = uniform(0, 1) == 0 ? pr.first : pr.second;
                m = m * ELOperator::generator(label, sort, index(dim, max_order));
            } else {
                const auto& [sort, a] = jets[static_cast<std::size_t>(uniform(0, static_cast<int>(jets.size()) - 1))];
                m = m * ELOperator::generator(label, sort, a);
            }
        }
        op += m * coefficient(3, false);
    }
    return op;
}

std::string SuiteResult::summary() const {
    std::string s = name + ": " + std::to_string(passed) + "/" + std::to_string(trials) + " passed";
    if (!failure.empty()) s += "; first nonzero term: " + failure;
    return s;
}

std::string first_term(const Session& s, const Expr& e) {
    if (e.is_zero()) return {};
    const auto& [m, c] = *e.terms().begin();
    return io::render(s, Expr::term(m, c, e.dim()));
}

std::string first_term(const Session& s, const HbarSeries& h) {
    for (int k = 0; k <= h.order; ++k)
        if (!h[k].is_zero()) return "hbar^" + std::to_string(k) + ": " + first_term(s, h[k]);
    return {};
}

namespace {

/// Runs `trial` o.trials times; a trial returns the first residual term or an empty string.
SuiteResult run(const std::string& name, int trials, const std::function<std::string(int)>& trial) {
    SuiteResult r;
    r.name = name;
    for (int t = 0; t < trials; ++t) {
        ++r.trials;
        std::string failure;
        try {
            failure = trial(t);
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        if (failure.empty())
            ++r.passed;
        else if (r.failure.empty())
            r.failure = "trial " + std::to_string(t) + ": " + failure;
    }
    return r;
}

std::string kernel_tag(const Session& s, const Kernel& p) { return " [" + io::render(s, p) + "]"; }

}  // namespace

SuiteResult jacobi(const Session& s, const Kernel& p, const SuiteOptions& o) {
    Generator gen(o.seed);
    return run("jacobi" + kernel_tag(s, p), o.trials, [&](int) {
        Expr f = gen.polynomial(o.poly), g = gen.polynomial(o.poly), h = gen.polynomial(o.poly);
        return first_term(s, jacobi_residual(f, g, h, p, o.poly.pairing));
    });
}

SuiteResult associativity(const Session& s, const Kernel& p, Level level, const SuiteOptions& o) {
    Generator gen(o.seed);
    return run(std::string("assoc ") + to_string(level) + kernel_tag(s, p), o.trials, [&](int) {
        Expr f = gen.polynomial(o.poly), g = gen.polynomial(o.poly), h = gen.polynomial(o.poly);
        return first_term(s, associativity_residual(f, g, h, p, o.poly.pairing, o.order, level));
    });
}

SuiteResult duality(const Session& s, const SuiteOptions& o) {
    Generator gen(o.seed);
    const Pairing pr = o.poly.pairing;
    return run("duality", o.trials, [&](int t) {
        Expr f = gen.polynomial(o.poly);
        ELOperator op = gen.el_operator_for(f, pr, kX, o.poly.max_jet_order);
        std::string r = first_term(s, duality_residual(op, f, kY));
        if (!r.empty()) return r;
        SortId sort = gen.uniform(0, 1) == 0 ? pr.first : pr.second;
        if (jet_indices(f, kFree, sort).empty()) sort = sort == pr.first ? pr.second : pr.first;
        return first_term(s, duality_power_residual(f, sort, 1 + t % 3, kX, kY));
    });
}

SuiteResult closed_form(const Session& s, const Kernel& p, const std::string& which, const SuiteOptions& o) {
    Generator gen(o.seed);
    const Pairing pr = o.poly.pairing;
    return run("closed-form " + which + kernel_tag(s, p), o.trials, [&](int) -> std::string {
        Functional F{gen.polynomial(o.poly), kX};
        Expr g = gen.polynomial(o.poly);
        if (which == "bracket-density")
            return first_term(s, bracket_functional_density_definitional(F, g, kY, p, pr) -
                                     bracket_functional_density_closed(F, g, kY, p, pr));
        if (which == "bracket-functionals") {
            Functional G{g, kY};
            Functional a = bracket_functionals_definitional(F, G, p, pr);
            Functional b = bracket_functionals_closed(F, G, p, pr);
            if (equivalent(a, b)) return std::string();
            return "differs beyond a divergence: " + first_term(s, a.density - b.density);
        }
        if (which == "gamma")
            return first_term(s, star_functional_density_definitional(F, g, kY, p, pr, o.order) -
                                     star_functional_density_gamma(F, g, kY, p, pr, o.order));
        if (which == "xi") {
            Functional G{g, kY};
            HbarSeries a = star_functionals_definitional(F, G, p, pr, o.order);
            HbarSeries b = star_functionals_xi(F, G, p, pr, o.order);
            return series_equivalent(a, b) ? std::string() : "differs beyond a divergence: " + first_term(s, a - b);
        }
        throw Error("unknown closed form '" + which + "'");
    });
}

SuiteResult semiclassical(const Session& s, const Kernel& p, const SuiteOptions& o) {
    Generator gen(o.seed);
    return run("semiclassical" + kernel_tag(s, p), o.trials, [&](int) {
        Expr f = gen.polynomial(o.poly), g = gen.polynomial(o.poly);
        HbarSeries r = commutator_semiclassical(f, kX, g, kY, p, o.poly.pairing, std::max(1, o.order));
        std::string a = first_term(s, r[0]);
        return a.empty() ? first_term(s, r[1]) : a;
    });
}

SuiteResult complex_equivalence(const Session& s, const Kernel& p, const SuiteOptions& o) {
    Generator gen(o.seed);
    PolySpec spec = o.poly;
    spec.pairing = models::kComplexPairing;
    spec.complex_coeffs = true;
    return run("complex-equiv" + kernel_tag(s, p), o.trials, [&](int) -> std::string {
        EquivalenceReport rep = real_complex_equivalence(p, models::kRealPairing, models::kComplexPairing);
        if (!rep.zero())
            return "basic brackets: " + first_term(s, rep.psi_psibar + rep.psi_psi + rep.psibar_psibar);
        Expr f = gen.polynomial(spec), g = gen.polynomial(spec);
        std::string r =
            first_term(s, real_complex_substitution_residual(f, g, p, models::kRealPairing, models::kComplexPairing));
        if (!r.empty()) return "substitution: " + r;
        r = first_term(s, conjugation_residual(f, g, p, models::kComplexPairing));
        return r.empty() ? r : "conjugation: " + r;
    });
}

SuiteResult exp_order(const Session& s, const Kernel& p, const SuiteOptions& o) {
    Generator gen(o.seed);
    const Pairing pr = o.poly.pairing;
    return run("exp-order" + kernel_tag(s, p), o.trials, [&](int) {
        Expr f = gen.polynomial(o.poly), g = gen.polynomial(o.poly), h = gen.polynomial(o.poly);
        HbarSeries left = star_fn(f, kX, g, kY, p, pr, o.order);
        return first_term(s, exp_order_residual(left, HbarSeries::of(place(h, kZ), o.order), p, pr, o.order));
    });
}

SuiteResult peierls(const Session& s, const PeierlsOptions& o) {
    using namespace fieldstar::peierls;
    const Pairing pr = models::kRealPairing;
    const int n = s.dim;
    std::vector<std::function<std::string()>> checks;
    auto fmt = [](const char* what, double v) { return std::string(what) + " = " + std::to_string(v); };

    for (double m : {0.0, 1.0}) {
        checks.emplace_back([=] {
            double worst = 0;
            for (int j = 0; j <= 100; ++j) worst = std::max(worst, green_pde_residual(m, 0.1 * j, o.modes));
            return worst < o.pde_tol ? std::string() : fmt("PDE residual", worst);
        });
        checks.emplace_back([=] {
            double worst = 0;
            for (int j = 0; j <= 100; ++j)
                for (int k = -o.modes; k <= o.modes; ++k)
                    worst = std::max(worst, std::abs(green_mode(k, m, -0.1 * j).value + green_mode(k, m, 0.1 * j).value));
            return worst == 0.0 ? std::string() : fmt("oddness defect", worst);
        });
        checks.emplace_back([=] {
            // Smooth real data spread over several modes.
            auto phi0 = SpectralField::from_function(o.modes, [](double x) { return std::sin(x) + 0.5 * std::cos(3 * x); });
            auto pi0 = SpectralField::from_function(o.modes, [](double x) { return 0.25 * std::sin(2 * x) - std::cos(x); });
            double e0 = energy(cauchy_solve(phi0, pi0, m, 0), cauchy_velocity(phi0, pi0, m, 0), m);
            double worst = 0;
            for (int j = 0; j <= 100; ++j) {
                double t = 0.1 * j;
                double e = energy(cauchy_solve(phi0, pi0, m, t), cauchy_velocity(phi0, pi0, m, t), m);
                worst = std::max(worst, std::abs(e - e0) / e0);
            }
            return worst < o.energy_tol ? std::string() : fmt("energy drift", worst);
        });
    }
    checks.emplace_back([=] {
        auto phi0 = SpectralField::from_function(o.modes, [](double x) { return std::sin(x); });
        auto pi0 = SpectralField::from_function(o.modes, [](double) { return 0.0; });
        double worst = 0;
        for (int j = 0; j <= 20; ++j)
            for (int i = 0; i < 64; ++i) {
                double t = 0.5 * j, x = 2 * std::numbers::pi * i / 64;
                worst = std::max(worst, std::abs(cauchy_solve(phi0, pi0, 0, t).evaluate(x) - std::sin(x) * std::cos(t)));
                worst = std::max(worst, std::abs(cauchy_solve(pi0, phi0, 0, t).evaluate(x) - std::sin(x) * std::sin(t)));
            }
        return worst < o.cauchy_tol ? std::string() : fmt("Cauchy error", worst);
    });
    checks.emplace_back([=] {
        ModeExpr b = peierls_bracket(pr, n);
        if (!(b == green_symbol(Time::TMinusS) * Coeff(-1))) return "bracket differs from -Delta(t-s): " + b.to_string();
        if (!b.coincide().is_zero()) return "equal-time bracket nonzero: " + b.coincide().to_string();
        if (!(b.swap_times() == b * Coeff(-1))) return std::string("bracket not odd under exchange");
        return std::string();
    });
    checks.emplace_back([=] {
        PeierlsStar st = peierls_star(pr, n);
        if (!st.exact || !st.factorizes || !st.matches_bracket)
            return std::string("star product differs from product + hbar bracket");
        ModeExpr c = peierls_commutator(pr, n);
        if (!(c == green_symbol(Time::TMinusS) * Coeff(-2))) return "commutator differs from -2 Delta: " + c.to_string();
        return std::string();
    });
    return run("peierls", static_cast<int>(checks.size()), [&](int t) { return checks[static_cast<std::size_t>(t)](); });
}

}  // namespace fieldstar::suites
