#include "doctest.h"
#include "helpers.hpp"

#include "fieldstar/error.hpp"
#include "fieldstar/star.hpp"
#include "fieldstar/suites.hpp"

using namespace testing;

TEST_CASE("basic brackets") {
    Fixture t;
    for (const char* k : {"delta", "i*delta", "d1 delta", "d1^2 delta - 2*delta"}) {
        Kernel p = t.k(k);
        CHECK(bracket_fn(t.e("phi"), kX, t.e("pi"), kY, p, kReal) == kernel_at(p, kX, kY));
        CHECK(bracket_fn(t.e("phi"), kX, t.e("phi"), kY, p, kReal).is_zero());
        CHECK(bracket_fn(t.e("pi"), kX, t.e("pi"), kY, p, kReal).is_zero());
    }
    CHECK(bracket_fn(t.e("phi^2"), kX, t.e("pi"), kY, t.k("delta"), kReal) == t.e("2*phi@x*delta(x,y)"));
    CHECK(bracket_fn(t.e("1/2*pi^2"), kX, t.e("pi"), kY, t.k("delta"), kReal).is_zero());
    CHECK(bracket_fn(t.e("pi"), kX, t.e("phi"), kY, t.k("delta"), kReal) == t.e("-delta(x,y)"));
}

TEST_CASE("bracket preconditions") {
    Fixture t;
    CHECK_THROWS_AS(bracket_fn(t.e("phi"), kX, t.e("pi"), kY, t.k("delta + d1 delta"), kReal), MixedKernel);
    CHECK_THROWS_AS(bracket_fn(t.e("phi@x"), kX, t.e("pi"), kY, t.k("delta"), kReal), LabelError);
    CHECK_THROWS_AS(bracket_tensor(t.e("pi"), kX, t.e("phi@x*delta(x,y)"), t.k("delta"), kReal), LabelError);
}

TEST_CASE("bracket with a tensor keeps existing kernels inert") {
    Fixture t;
    Expr T = t.e("phi@x*phi@y*delta[1,0,0](x,y)");
    CHECK(bracket_tensor(t.e("pi"), kZ, T, t.k("delta"), kReal) ==
          t.e("-delta(x,z)*delta[1,0,0](x,y)*phi@y - delta(y,z)*delta[1,0,0](x,y)*phi@x"));
    CHECK(bracket_tensor(t.e("pi"), kZ, t.e("3*delta[1,1,0](x,y)"), t.k("delta"), kReal).is_zero());
    CHECK(bracket_tensor(t.e("5"), kZ, T, t.k("delta"), kReal).is_zero());
}

TEST_CASE("Jacobi identity examples") {
    Fixture t;
    CHECK(jacobi_residual(t.e("phi^2*pi"), t.e("phi[1,0,0]*pi"), t.e("pi^3"), t.k("delta"), kReal).is_zero());
    CHECK(jacobi_residual(t.e("phi^2*pi"), t.e("phi[1,0,0]*pi"), t.e("pi^3"), t.k("d1 delta"), kReal).is_zero());
    CHECK(jacobi_residual(t.e("phi^2"), t.e("pi"), t.e("1"), t.k("delta"), kReal).is_zero());
}

TEST_CASE("Leibniz rule and antisymmetry on random inputs") {
    suites::Generator gen(61);
    suites::PolySpec spec;
    spec.dim = 2;
    for (KernelClass cls : {KernelClass::Symmetric, KernelClass::Antisymmetric}) {
        for (int trial = 0; trial < 25; ++trial) {
            Kernel p = gen.kernel(2, cls, 2, trial % 2 == 1);
            Expr f = gen.polynomial(spec), g1 = gen.polynomial(spec), g2 = gen.polynomial(spec);
            Expr lhs = bracket_fn(f, kX, g1 * g2, kY, p, kReal);
            Expr rhs = place(g1, kY) * bracket_fn(f, kX, g2, kY, p, kReal) +
                       place(g2, kY) * bracket_fn(f, kX, g1, kY, p, kReal);
            CHECK(lhs == rhs);
            CHECK(bracket_fn(f, kX, g1, kY, p, kReal) == -bracket_fn(g1, kY, f, kX, p, kReal));
        }
    }
}

TEST_CASE("functional-density brackets") {
    Fixture t;
    Kernel d = t.k("delta");
    CHECK(bracket_functional_density(t.f("int{x}: phi*pi"), t.e("pi"), kY, d, kReal) == t.e("pi@y"));
    Functional kg{models::kg_density(3), kX};
    CHECK(bracket_functional_density(kg, t.e("phi"), kY, d, kReal) == t.e("-pi@y"));
    CHECK(detach(bracket_functional_density(kg, t.e("pi"), kY, d, kReal), kY) ==
          t.e("m^2*phi + U'(phi) - laplacian(phi)"));
    CHECK_THROWS_AS(bracket_functional_density({t.e("phi + 1"), kX}, t.e("pi"), kY, d, kReal), ConditionBViolation);
}

TEST_CASE("functional brackets") {
    Fixture t;
    Functional F = t.f("int{x}: phi*pi"), G = t.f("int{x}: phi^2");
    Functional b = bracket_functionals(F, G, t.k("delta"), kReal);
    CHECK(equivalent(b, {t.e("-2*phi^2"), kX}));
    CHECK(equivalent(bracket_functionals(F, F, t.k("delta"), kReal), {Expr(3), kX}));
    CHECK(equivalent(bracket_functionals(F, G, t.k("d1 delta"), kReal), {Expr(3), kX}));
}

TEST_CASE("functional equivalence uses the Euler-operator criterion") {
    Fixture t;
    CHECK(equivalent_modulo_divergence(t.e("phi*phi[2,0,0]"), t.e("-phi[1,0,0]^2")));
    CHECK_FALSE(equivalent_modulo_divergence(t.e("phi*phi[2,0,0]"), t.e("phi[1,0,0]^2")));
}

TEST_CASE("module brackets follow the Leibniz rule") {
    Fixture t;
    Functional F = t.f("int{w}: phi*pi");
    Kernel d = t.k("delta");
    Expr direct = module_bracket(t.e("pi"), kZ, t.e("phi"), kY, F, d, kReal);
    Expr leibniz = module_bracket_leibniz(t.e("pi"), kZ, t.e("phi"), kY, F, d, kReal);
    CHECK(equivalent_integrated(direct, leibniz));
    CHECK(module_bracket(t.e("7"), kZ, t.e("phi"), kY, F, d, kReal).is_zero());
}

TEST_CASE("functional antisymmetry and Jacobi on random functionals") {
    suites::Generator gen(71);
    suites::PolySpec spec;
    spec.dim = 1;
    spec.max_terms = 2;
    for (KernelClass cls : {KernelClass::Symmetric, KernelClass::Antisymmetric}) {
        for (int trial = 0; trial < 10; ++trial) {
            Kernel p = gen.kernel(1, cls, 1);
            Functional F{gen.polynomial(spec), kX}, G{gen.polynomial(spec), kX}, H{gen.polynomial(spec), kX};
            Functional fg = bracket_functionals(F, G, p, kReal), gf = bracket_functionals(G, F, p, kReal);
            CHECK(equivalent(fg, {-gf.density, gf.label}));
            Expr cyclic = bracket_functionals(fg, H, p, kReal).density +
                          bracket_functionals(bracket_functionals(G, H, p, kReal), F, p, kReal).density +
                          bracket_functionals(bracket_functionals(H, F, p, kReal), G, p, kReal).density;
            CHECK(equivalent_modulo_divergence(cyclic, Expr(1)));
        }
    }
}

TEST_CASE("definitional and closed-form functional brackets agree") {
    suites::Generator gen(81);
    suites::PolySpec spec;
    spec.dim = 3;
    for (int trial = 0; trial < 15; ++trial) {
        Kernel p = gen.kernel(3, trial % 2 ? KernelClass::Antisymmetric : KernelClass::Symmetric, 2);
        Functional F{gen.polynomial(spec), kX}, G{gen.polynomial(spec), kX};
        Expr g = gen.polynomial(spec);
        CHECK(bracket_functional_density_definitional(F, g, kY, p, kReal) ==
              bracket_functional_density_closed(F, g, kY, p, kReal));
        CHECK(equivalent(bracket_functionals_definitional(F, G, p, kReal), bracket_functionals_closed(F, G, p, kReal)));
    }
}
