/// Acceptance report: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "oracle.hpp"

#include "fieldstar/complex.hpp"
#include "fieldstar/euler_lagrange.hpp"
#include "fieldstar/io.hpp"
#include "fieldstar/models.hpp"
#include "fieldstar/star.hpp"
#include "fieldstar/suites.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace fieldstar;
namespace su = fieldstar::suites;

namespace {

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;
    void add(bool pass, const std::string& note) {
        ok = ok && pass;
        if (!pass) notes.push_back(note);
    }
    void add(const su::SuiteResult& r, const std::string& tag) {
        ok = ok && r.ok();
        notes.push_back(tag + (tag.empty() ? "" : " ") + r.summary());
    }
};

Kernel kernel(const Session& s, const std::string& text) { return io::parse_kernel(s, text); }

/// One symmetric and one antisymmetric kernel per dimension.
std::vector<std::string> kernel_texts() { return {"delta - 2*d1^2 delta", "d1 delta"}; }

su::SuiteOptions options(int dim, const Pairing& pr, int trials, std::uint64_t seed) {
    su::SuiteOptions o;
    o.trials = trials;
    o.seed = seed;
    o.order = 4;
    o.poly.dim = dim;
    o.poly.pairing = pr;
    o.poly.max_degree = 3;
    o.poly.max_jet_order = 1;
    o.poly.complex_coeffs = pr.first == models::kPsi;
    return o;
}

std::string tag(int dim, const std::string& k) { return "[n=" + std::to_string(dim) + ", P=" + k + "]"; }

Outcome basic_brackets() {
    Outcome out;
    Session s = Session::standard(3);
    const Expr phi = models::field(models::kPhi, 3), pi = models::field(models::kPi, 3);
    for (const char* k : {"delta", "i*delta", "d1 delta"}) {
        Kernel p = kernel(s, k);
        const Pairing pr = models::kRealPairing;
        out.add(bracket_fn(phi, kX, pi, kY, p, pr) == kernel_at(p, kX, kY), std::string("{phi,pi} with ") + k);
        out.add(bracket_fn(phi, kX, phi, kY, p, pr).is_zero(), std::string("{phi,phi} with ") + k);
        out.add(bracket_fn(pi, kX, pi, kY, p, pr).is_zero(), std::string("{pi,pi} with ") + k);
    }
    return out;
}

Outcome jacobi(const Pairing& pr) {
    Outcome out;
    for (int dim : {1, 3}) {
        Session s = Session::standard(dim);
        for (const auto& k : kernel_texts()) out.add(su::jacobi(s, kernel(s, k), options(dim, pr, 50, 7)), tag(dim, k));
    }
    return out;
}

Outcome associativity(const Pairing& pr) {
    Outcome out;
    for (int dim : {1, 3}) {
        Session s = Session::standard(dim);
        for (const auto& k : kernel_texts()) {
            Kernel p = kernel(s, k);
            for (Level l : {Level::Function, Level::Density, Level::FunctionalDensity,
                            Level::FunctionalFunctionalDensity, Level::Functionals})
                out.add(su::associativity(s, p, l, options(dim, pr, 25, 11)), tag(dim, k));
            out.add(su::exp_order(s, p, options(dim, pr, 25, 13)), tag(dim, k));
        }
    }
    return out;
}

Outcome duality(const Pairing& pr) {
    Outcome out;
    for (int dim : {1, 3}) {
        Session s = Session::standard(dim);
        su::SuiteOptions o = options(dim, pr, 50, 17);
        o.poly.max_jet_order = 2;
        out.add(su::duality(s, o), tag(dim, "-"));
    }
    return out;
}

Outcome closed_forms(const Pairing& pr) {
    Outcome out;
    for (int dim : {1, 3}) {
        Session s = Session::standard(dim);
        for (const auto& k : kernel_texts())
            for (const char* which : {"bracket-density", "bracket-functionals", "gamma", "xi"})
                out.add(su::closed_form(s, kernel(s, k), which, options(dim, pr, 25, 19)), tag(dim, k));
    }
    return out;
}

Outcome semiclassical(const Pairing& pr) {
    Outcome out;
    for (int dim : {1, 3}) {
        Session s = Session::standard(dim);
        for (const auto& k : kernel_texts())
            out.add(su::semiclassical(s, kernel(s, k), options(dim, pr, 50, 23)), tag(dim, k));
    }
    return out;
}

Outcome wave_equation() {
    Outcome out;
    Session s = Session::standard(3);
    Functional H = io::parse_functional(
        s, "int{x}: 1/2*(pi^2 + d1(phi)^2 + d2(phi)^2 + d3(phi)^2 + m^2*phi^2) + U(phi)");
    Kernel p = kernel(s, "i*delta");
    EomResult pi_dot = equation_of_motion(H, io::parse_expr(s, "pi"), p, models::kRealPairing, Coeff::i());
    EomResult phi_dot = equation_of_motion(H, io::parse_expr(s, "phi"), p, models::kRealPairing, Coeff::i());
    std::string a = io::render(s, pi_dot.rhs), b = io::render(s, phi_dot.rhs);
    out.add(a == "laplacian(phi) - m^2*phi - U'(phi)", "pi_t = " + a);
    out.add(b == "pi", "phi_t = " + b);
    out.add(pi_dot.star_route_agrees && phi_dot.star_route_agrees, "star and bracket routes disagree");
    return out;
}

Outcome nls() {
    Outcome out;
    Session s = Session::standard(3);
    Functional H = io::parse_functional(s, "int{x}: d1(psi)*d1(psibar) + d2(psi)*d2(psibar) + d3(psi)*d3(psibar) + "
                                           "kappa*psi^2*psibar^2");
    EomResult r = equation_of_motion(H, io::parse_expr(s, "psi"), kernel(s, "i*delta"), models::kComplexPairing,
                                     Coeff::i());
    std::string text = io::render(s, r.rhs);
    out.add(text == "-laplacian(psi) + 2*kappa*psi^2*psibar", "i psi_t = " + text);
    out.add(r.star_route_agrees, "star and bracket routes disagree");
    out.add(real_complex_equivalence(kernel(s, "delta"), models::kRealPairing, models::kComplexPairing).zero(),
            "equivalence residual for delta");
    su::Generator gen(29);
    for (int t = 0; t < 25; ++t) {
        Kernel p = gen.kernel(3, KernelClass::Symmetric, 2, true);
        out.add(real_complex_equivalence(p, models::kRealPairing, models::kComplexPairing).zero(),
                "equivalence residual for " + io::render(s, p));
    }
    out.add(su::complex_equivalence(s, kernel(s, "delta"), options(3, models::kComplexPairing, 25, 31)), "");
    return out;
}

Outcome complex_suites() {
    Outcome out;
    const Pairing pr = models::kComplexPairing;
    for (const auto& part : {jacobi(pr), associativity(pr), duality(pr), closed_forms(pr), semiclassical(pr)}) {
        out.ok = out.ok && part.ok;
        out.notes.insert(out.notes.end(), part.notes.begin(), part.notes.end());
    }
    return out;
}

Outcome peierls_numerics() {
    Outcome out;
    su::PeierlsOptions o;
    o.modes = 64;
    out.add(su::peierls(Session::standard(1), o), "");
    return out;
}

Outcome variational_oracle() {
    Outcome out;
    Session s = Session::standard(1);
    su::Generator gen(37);
    std::mt19937_64 rng(41);
    su::PolySpec spec;
    spec.dim = 1;
    spec.max_jet_order = 2;
    spec.max_degree = 3;
    const Expr extra = io::parse_expr(s, "U(phi)*pi + m^2*phi[1]^2");
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
        Expr f = gen.polynomial(spec);
        if (trial % 2 == 0) f += extra;
        oracle::Environment env;
        env.params[models::kMass] = 0.8;
        env.fields[models::kPhi] = oracle::TrigField::random(rng, 1);
        env.fields[models::kPi] = oracle::TrigField::random(rng, 1);
        for (SortId sort : {models::kPhi, models::kPi}) {
            auto g = oracle::gateaux(f, variational_derivative(f, sort), sort, env, oracle::TrigField::random(rng, 1),
                                     256);
            worst = std::max(worst, g.relative_error());
            out.add(g.relative_error() < 1e-6, "density " + io::render(s, f));
        }
    }
    std::ostringstream note;
    note << "worst relative error " << worst;
    out.notes.push_back(note.str());
    return out;
}

}  // namespace

int main() {
    const Pairing real = models::kRealPairing;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"basic brackets", basic_brackets},
        {"Jacobi identity", [&] { return jacobi(real); }},
        {"associativity, five levels and exp ordering", [&] { return associativity(real); }},
        {"duality including powers", [&] { return duality(real); }},
        {"closed forms against definitional routes", [&] { return closed_forms(real); }},
        {"semiclassical limit", [&] { return semiclassical(real); }},
        {"wave equation", wave_equation},
        {"nonlinear Schroedinger and real/complex equivalence", nls},
        {"complex-pairing suites", complex_suites},
        {"Green function numerics and symbolic Peierls identities", peierls_numerics},
        {"variational derivative against Gateaux oracle", variational_oracle},
    };
    bool all = true;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << "  " << index << "  " << name << "  (" << secs << " s)\n";
        for (const auto& n : o.notes) std::cout << "      " << n << "\n";
        std::cout.flush();
    }
    return all ? 0 : 1;
}
