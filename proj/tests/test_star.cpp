#include "doctest.h"
#include "helpers.hpp"

#include "fieldstar/star.hpp"
#include "fieldstar/suites.hpp"

using namespace testing;

namespace {

/// Coefficients up to `order` equal the given list and the rest vanish.
bool series_is(const HbarSeries& h, const std::vector<Expr>& coeffs) {
    for (int k = 0; k <= h.order; ++k) {
        Expr want = static_cast<std::size_t>(k) < coeffs.size() ? coeffs[static_cast<std::size_t>(k)] : Expr();
        if (h[k] != want) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("sigma powers") {
    Fixture t;
    Kernel d = t.k("delta");
    CHECK(sigma_power(t.e("phi@x"), kX, t.e("pi@y"), kY, d, kReal, 0) == t.e("phi@x*pi@y"));
    CHECK(sigma_power(t.e("phi@x"), kX, t.e("pi@y"), kY, d, kReal, 1) == t.e("delta(x,y)"));
    CHECK(sigma_power(t.e("phi@x"), kX, t.e("pi@y"), kY, d, kReal, 2).is_zero());
    CHECK(sigma_power(t.e("phi@x^2"), kX, t.e("pi@y^2"), kY, d, kReal, 2) == t.e("4*delta(x,y)"));
}

TEST_CASE("function-level star products") {
    Fixture t;
    Kernel d = t.k("delta");
    HbarSeries one = star_fn(t.e("1"), kX, t.e("phi^2*pi"), kY, d, kReal, 4);
    CHECK(series_is(one, {t.e("phi@y^2*pi@y")}));
    HbarSeries a = star_fn(t.e("phi"), kX, t.e("pi"), kY, d, kReal, 6);
    CHECK(series_is(a, {t.e("phi@x*pi@y"), t.e("delta(x,y)")}));
    CHECK(a.exact);
    HbarSeries b = star_fn(t.e("pi"), kX, t.e("phi"), kY, d, kReal, 6);
    CHECK(series_is(b, {t.e("pi@x*phi@y"), t.e("-delta(x,y)")}));
    CHECK(b.exact);
}

TEST_CASE("non-terminating series are truncated and flagged") {
    Fixture t;
    HbarSeries h = star_fn(t.e("U(phi)"), kX, t.e("pi^5"), kY, t.k("delta"), kReal, 3);
    CHECK_FALSE(h.exact);
    CHECK(h[3] == t.e("10*pi@y^2*U'''(phi@x)*delta(x,y)"));
    HbarSeries full = star_fn(t.e("U(phi)"), kX, t.e("pi^5"), kY, t.k("delta"), kReal, 5);
    CHECK(full.exact);
}

TEST_CASE("grouped and chained star products") {
    Fixture t;
    Kernel d = t.k("delta");
    HbarSeries g = star_grouped(HbarSeries::of(t.e("pi@z"), 2), HbarSeries::of(t.e("phi@x*phi@y"), 2), d, kReal, 2);
    CHECK(series_is(g, {t.e("pi@z*phi@x*phi@y"), t.e("-delta(x,z)*phi@y - delta(y,z)*phi@x")}));
    HbarSeries T = HbarSeries::of(t.e("phi@x^2*pi@y*delta(x,y)"), 3);
    CHECK(series_is(star_grouped(HbarSeries::of(t.e("1"), 3), T, d, kReal, 3), {T[0]}));
    HbarSeries c = star_chain({{t.e("phi"), kX}, {t.e("pi"), kY}, {t.e("phi"), kZ}}, d, kReal, 4);
    CHECK(series_is(c, {t.e("phi@x*pi@y*phi@z"), t.e("delta(x,y)*phi@z - delta(y,z)*phi@x")}));
    HbarSeries c2 = star_chain({{t.e("phi"), kX}, {t.e("pi"), kY}, {t.e("3"), kZ}}, d, kReal, 4);
    CHECK(series_is(c2, {t.e("3*phi@x*pi@y"), t.e("3*delta(x,y)")}));
}

TEST_CASE("the leading coefficient is the plain product") {
    suites::Generator gen(91);
    suites::PolySpec spec;
    spec.dim = 2;
    for (int trial = 0; trial < 20; ++trial) {
        Kernel p = gen.kernel(2, trial % 2 ? KernelClass::Antisymmetric : KernelClass::Symmetric, 2, true);
        Expr f = gen.polynomial(spec), g = gen.polynomial(spec);
        CHECK(star_fn(f, kX, g, kY, p, kReal, 3)[0] == place(f, kX) * place(g, kY));
    }
}

TEST_CASE("associativity at every level on random inputs") {
    suites::Generator gen(101);
    suites::PolySpec spec;
    spec.dim = 1;
    spec.max_degree = 2;
    for (Level level : {Level::Function, Level::Density, Level::FunctionalDensity, Level::FunctionalFunctionalDensity,
                        Level::Functionals}) {
        for (int trial = 0; trial < 4; ++trial) {
            Kernel p = gen.kernel(1, trial % 2 ? KernelClass::Antisymmetric : KernelClass::Symmetric, 1);
            Expr f = gen.polynomial(spec), g = gen.polynomial(spec), h = gen.polynomial(spec);
            CHECK(associativity_residual(f, g, h, p, kReal, 4, level).is_zero());
        }
    }
}

TEST_CASE("exp ordering does not matter") {
    suites::Generator gen(111);
    suites::PolySpec spec;
    spec.dim = 2;
    spec.max_degree = 2;
    for (int trial = 0; trial < 8; ++trial) {
        Kernel p = gen.kernel(2, trial % 2 ? KernelClass::Antisymmetric : KernelClass::Symmetric, 1);
        HbarSeries left = HbarSeries::of(place(gen.polynomial(spec), kX) * place(gen.polynomial(spec), kY), 4);
        HbarSeries right = HbarSeries::of(place(gen.polynomial(spec), kZ), 4);
        CHECK(exp_order_residual(left, right, p, kReal, 4).is_zero());
    }
}

TEST_CASE("star products with functionals") {
    Fixture t;
    Kernel d = t.k("delta");
    Functional F = t.f("int{x}: phi*pi"), G = t.f("int{x}: phi^2");
    HbarSeries fg = star_functional_density(F, t.e("phi"), kY, d, kReal, 6);
    CHECK(fg.exact);
    CHECK(equivalent_integrated(fg[0], as_integral(F) * t.e("phi@y")));
    CHECK(equivalent_integrated(fg[1], t.e("-phi@y")));
    CHECK(fg[2].is_zero());
    HbarSeries ff = star_functionals(F, G, d, kReal, 6);
    CHECK(ff.exact);
    CHECK(equivalent_integrated(ff[1], as_integral({t.e("-2*phi^2"), kX})));
    CHECK(ff[2].is_zero());
}

TEST_CASE("closed-form star products agree with the definitional ones") {
    suites::Generator gen(121);
    suites::PolySpec spec;
    spec.dim = 1;
    spec.max_degree = 2;
    for (int trial = 0; trial < 8; ++trial) {
        Kernel p = gen.kernel(1, trial % 2 ? KernelClass::Antisymmetric : KernelClass::Symmetric, 1);
        Functional F{gen.polynomial(spec), kX}, G{gen.polynomial(spec), kX};
        Expr g = gen.polynomial(spec);
        CHECK(series_equivalent(star_functional_density_definitional(F, g, kY, p, kReal, 4),
                                star_functional_density_gamma(F, g, kY, p, kReal, 4)));
        CHECK(series_equivalent(star_functionals_definitional(F, G, p, kReal, 4),
                                star_functionals_xi(F, G, p, kReal, 4)));
    }
}

TEST_CASE("semiclassical limit") {
    Fixture t;
    Kernel d = t.k("delta");
    HbarSeries r = commutator_semiclassical(t.e("phi"), kX, t.e("pi"), kY, d, kReal, 4);
    CHECK(r.is_zero());
    CHECK(semiclassical_kernel(d) == t.k("2*delta"));
    CHECK(semiclassical_kernel(t.k("d1 delta")) == t.k("2*d1 delta"));
    CHECK(commutator_semiclassical(t.e("phi"), kX, t.e("phi"), kY, d, kReal, 4).is_zero());
    suites::Generator gen(131);
    suites::PolySpec spec;
    spec.dim = 2;
    spec.max_degree = 2;
    for (int trial = 0; trial < 20; ++trial) {
        Kernel p = gen.kernel(2, trial % 2 ? KernelClass::Antisymmetric : KernelClass::Symmetric, 2);
        HbarSeries res = commutator_semiclassical(gen.polynomial(spec), kX, gen.polynomial(spec), kY, p, kReal, 3);
        CHECK(res[0].is_zero());
        CHECK(res[1].is_zero());
    }
}

TEST_CASE("the literal P + P^t kernel fails the limit for antisymmetric kernels") {
    Fixture t;
    Kernel p = t.k("d1 delta");
    CHECK((p + transpose(p)).is_zero());
    HbarSeries comm = star_fn(t.e("phi"), kX, t.e("pi"), kY, p, kReal, 3) -
                      star_fn(t.e("pi"), kY, t.e("phi"), kX, p, kReal, 3);
    CHECK_FALSE(comm[1].is_zero());
}

TEST_CASE("equations of motion") {
    Fixture t;
    Functional kg{models::kg_density(3), kX};
    Kernel id = t.k("i*delta");
    EomResult pi_dot = equation_of_motion(kg, t.e("pi"), id, kReal, Coeff::i());
    CHECK(t.r(pi_dot.rhs) == "laplacian(phi) - m^2*phi - U'(phi)");
    CHECK(pi_dot.star_route_agrees);
    EomResult phi_dot = equation_of_motion(kg, t.e("phi"), id, kReal, Coeff::i());
    CHECK(t.r(phi_dot.rhs) == "pi");
    CHECK(phi_dot.star_route_agrees);
    Functional free{models::kg_density(3, false), kX};
    CHECK(t.r(equation_of_motion(free, t.e("pi"), id, kReal, Coeff::i()).rhs) == "laplacian(phi) - m^2*phi");
}
