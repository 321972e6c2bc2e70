#pragma once

/// Shared fixtures for the unit tests: a standard session and text shorthands.

#include "fieldstar/io.hpp"
#include "fieldstar/models.hpp"
#include "fieldstar/poisson.hpp"
#include "fieldstar/session.hpp"

#include <string>

namespace testing {

using namespace fieldstar;

struct Fixture {
    Session s;
    explicit Fixture(int dim = 3) : s(Session::standard(dim)) {}
    Expr e(const std::string& text) const { return io::parse_expr(s, text); }
    Kernel k(const std::string& text) const { return io::parse_kernel(s, text); }
    Functional f(const std::string& text) const { return io::parse_functional(s, text); }
    std::string r(const Expr& x) const { return io::render(s, x); }
    std::string r(const Functional& x) const { return io::render(s, x); }
    std::string r(const HbarSeries& x) const { return io::render(s, x); }
};

inline const Pairing kReal = models::kRealPairing;
inline const Pairing kComplex = models::kComplexPairing;

}  // namespace testing
