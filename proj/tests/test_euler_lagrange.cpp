#include "doctest.h"
#include "helpers.hpp"
#include "oracle.hpp"

#include "fieldstar/euler_lagrange.hpp"
#include "fieldstar/suites.hpp"

using namespace testing;

namespace {

const SortId kU = models::kPhi;
const SortId kXi = models::kPi;

ELOperator gen_at(SortId s, const MultiIndex& a) { return ELOperator::generator(kX, s, a); }

}  // namespace

TEST_CASE("Euler-Lagrange operators act on expression-kernel pairs") {
    Fixture t;
    const MultiIndex zero(3), e1{1, 0, 0};
    ELOperator op = gen_at(kU, zero) * gen_at(kXi, e1);
    CHECK(apply_el(op, t.e("phi@x*pi[1,0,0]@x*delta(x,y)")) == t.e("delta[1,0,0](x,y)"));
    Expr T = t.e("phi@x^2*pi@x*delta(x,y)");
    CHECK(apply_el(ELOperator::identity(kX), T) == T);
    CHECK(apply_el(gen_at(kU, e1), t.e("phi[1,0,0]@x^2*delta(x,y)")) == t.e("2*phi[1,0,0]@x*delta[1,0,0](x,y)"));
}

TEST_CASE("Euler-Lagrange derivatives") {
    Fixture t;
    CHECK(el_derivative(t.e("phi@x^2*delta(x,y)"), kU, kX, 1) == t.e("2*phi@x*delta(x,y)"));
    CHECK(el_derivative(t.e("phi[1,0,0]@x*delta(x,y)"), kU, kX, 1) == t.e("delta[1,0,0](x,y)"));
    CHECK(el_derivative(t.e("pi@x*delta(x,y)"), kU, kX, 1).is_zero());
    CHECK(el_derivative(t.e("phi@x^3*delta(x,y)"), kU, kX, 2) == t.e("6*phi@x*delta(x,y)"));
}

TEST_CASE("dual operators act on densities") {
    Fixture t;
    const MultiIndex zero(3), e1{1, 0, 0};
    CHECK(apply_dual(DualELOperator::generator(kU, e1), t.e("phi[1,0,0]^2")) == t.e("-2*phi[2,0,0]"));
    CHECK(apply_dual(DualELOperator::generator(kU, zero), t.e("phi")) == t.e("1"));
    CHECK(variational_derivative(models::kg_density(3), kU) == t.e("m^2*phi + U'(phi) - laplacian(phi)"));
}

TEST_CASE("duality examples") {
    Fixture t;
    const MultiIndex e1{1, 0, 0};
    CHECK(duality_residual(gen_at(kU, e1), t.e("phi*phi[1,0,0]"), kY).is_zero());
    CHECK(duality_residual(ELOperator::identity(kX), t.e("phi^2*pi[0,1,0]"), kY).is_zero());
    for (int k = 1; k <= 3; ++k) CHECK(duality_power_residual(models::kg_density(3), kU, k, kX, kY).is_zero());
}

TEST_CASE("variational derivatives") {
    Fixture t;
    Expr kg = models::kg_density(3);
    CHECK(variational_derivative(kg, kU) == t.e("m^2*phi + U'(phi) - laplacian(phi)"));
    CHECK(variational_derivative(kg, kXi) == t.e("pi"));
    CHECK(variational_derivative(total_derivative(t.e("phi^2"), kFree, 1), kU).is_zero());
    CHECK(pointwise_variation(t.e("phi^2"), kU, kX, kY) == t.e("2*phi@x*delta(x,y)"));
}

TEST_CASE("composition law for Euler-Lagrange operators") {
    suites::Generator gen(31);
    suites::PolySpec spec;
    spec.dim = 2;
    spec.max_jet_order = 2;
    for (int trial = 0; trial < 40; ++trial) {
        ELOperator p1 = gen.el_operator(2, kReal, kX, 2), p2 = gen.el_operator(2, kReal, kX, 2);
        Expr T = place(gen.polynomial(spec), kX) * place(gen.polynomial(spec), kY) * delta(kX, kY, gen.index(2, 1));
        CHECK(apply_el(p1 * p2, T) == apply_el(p1, apply_el(p2, T)));
    }
}

TEST_CASE("duality on random operators and powers") {
    for (int dim : {1, 3}) {
        suites::Generator gen(40 + dim);
        suites::PolySpec spec;
        spec.dim = dim;
        spec.max_jet_order = 2;
        for (int trial = 0; trial < 25; ++trial) {
            Expr f = gen.polynomial(spec);
            CHECK(duality_residual(gen.el_operator(dim, kReal, kX, 2), f, kY).is_zero());
            CHECK(duality_power_residual(f, trial % 2 ? kU : kXi, 1 + trial % 3, kX, kY).is_zero());
        }
    }
}

TEST_CASE("the Euler operator annihilates total divergences") {
    suites::Generator gen(50);
    suites::PolySpec spec;
    spec.dim = 3;
    spec.max_jet_order = 2;
    for (int trial = 0; trial < 40; ++trial) {
        Expr f = gen.polynomial(spec);
        for (int i = 1; i <= 3; ++i) {
            Expr d = total_derivative(f, kFree, i);
            CHECK(variational_derivative(d, kU).is_zero());
            CHECK(variational_derivative(d, kXi).is_zero());
        }
    }
}

TEST_CASE("variational derivative matches a Gateaux derivative on the torus") {
    Fixture t(1);
    std::mt19937_64 rng(77);
    suites::Generator gen(78);
    suites::PolySpec spec;
    spec.dim = 1;
    spec.max_jet_order = 2;
    for (int trial = 0; trial < 10; ++trial) {
        Expr f = gen.polynomial(spec);
        if (trial % 3 == 0) f += t.e("U(phi)*pi[1]");
        oracle::Environment env;
        env.params[models::kMass] = 1.3;
        env.fields[kU] = oracle::TrigField::random(rng, 1);
        env.fields[kXi] = oracle::TrigField::random(rng, 1);
        for (SortId s : {kU, kXi}) {
            auto g = oracle::gateaux(f, variational_derivative(f, s), s, env, oracle::TrigField::random(rng, 1));
            CHECK(g.relative_error() < 1e-6);
        }
    }
}

TEST_CASE("a wrong variational derivative fails the Gateaux oracle") {
    Fixture t(1);
    std::mt19937_64 rng(79);
    oracle::Environment env;
    env.fields[kU] = oracle::TrigField::random(rng, 1);
    env.fields[kXi] = oracle::TrigField::random(rng, 1);
    Expr f = t.e("phi[1]^2*pi");
    Expr naive = partial(f, Atom::jet(kFree, kU, MultiIndex(1)));  // ignores the derivative dependence
    auto g = oracle::gateaux(f, naive, kU, env, oracle::TrigField::random(rng, 1));
    CHECK(g.relative_error() > 1e-3);
}
