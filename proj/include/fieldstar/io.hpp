#pragma once

#include "fieldstar/kernel.hpp"
#include "fieldstar/session.hpp"
#include "fieldstar/star.hpp"

#include <string>
#include <string_view>

namespace fieldstar::io {

/// Expression grammar: phi, phi[0,1,0], phi@x, U(phi), U'(phi), U^(4)(phi), m, i, integers,
/// + - * / ^, parentheses, d1(e), laplacian(e), delta(x,y), delta[1,0,0](x,y), delta[2,0,0](0), int(x).
Expr parse_expr(const Session& s, std::string_view text);
/// "int{x}: <density>"; the density must satisfy condition B.
Functional parse_functional(const Session& s, std::string_view text);
/// Sums of coefficient * d1^a d2^b ... delta, e.g. "delta + 2*d1 delta", "i*delta", "d1^2 delta".
Kernel parse_kernel(const Session& s, std::string_view text);

/// Text form; re-parses to an equal value. Laplacian groups are folded when dim >= 2.
std::string render(const Session& s, const Expr& e);
std::string render(const Session& s, const Kernel& k);
std::string render(const Session& s, const Functional& f);
/// "c0 + hbar*(c1) + hbar^2*(c2) ..."
std::string render(const Session& s, const HbarSeries& h);

/// Canonical JSON: {"kind", "dim", "data"}, sorted keys, rationals as "p/q", complex as {"re","im"}.
std::string to_json(const Session& s, const Expr& e, std::string_view kind = "expr");
std::string to_json(const Session& s, const Kernel& k);
std::string to_json(const Session& s, const Functional& f);
std::string to_json(const Session& s, const HbarSeries& h);

Expr expr_from_json(const Session& s, std::string_view json);
Kernel kernel_from_json(const Session& s, std::string_view json);
HbarSeries series_from_json(const Session& s, std::string_view json);

/// Session configuration file: {"kind": "session", "dim": n, "data": {...}}.
struct Config {
    Session session;
    std::string hamiltonian;  // functional source text, may be empty
    std::string kernel;       // kernel source text, may be empty
    std::string prefactor;    // constant source text, may be empty
};
Config config_from_json(std::string_view json);
std::string config_to_json(const Config& c);

}  // namespace fieldstar::io
