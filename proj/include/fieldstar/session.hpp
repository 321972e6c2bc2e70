#pragma once

#include "fieldstar/poisson.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fieldstar {

enum class SortKind { Position, Momentum, Holomorphic, Antiholomorphic };

struct SortDecl {
    std::string name;
    SortKind kind = SortKind::Position;
    SortId partner = 0;
};

struct FunctionDecl {
    std::string name;
    SortId argument = 0;
    /// U^(j)(0) = 0 for j < vanish; -1 when unknown.
    std::int16_t vanish = -1;
};

/// Session-wide configuration: dimension, declared sorts, labels, parameters, function symbols.
struct Session {
    int dim = 3;
    int order = 6;
    double tolerance = 1e-8;
    std::uint64_t seed = 0;
    std::vector<SortDecl> sorts;          // indexed by SortId
    std::vector<std::string> labels;      // indexed by Label; entry 0 is the free slot
    std::vector<std::string> params;      // indexed by parameter id
    std::vector<FunctionDecl> functions;  // indexed by function id

    /// phi/pi (real), psi/psibar (complex), labels x y z w, parameters m kappa, U(phi) = o(phi^2).
    static Session standard(int dim = 3);

    /// Declares `name` and its conjugate; real fields need the momentum name.
    void declare_real_field(const std::string& name, const std::string& momentum);
    void declare_complex_field(const std::string& name);

    std::optional<SortId> find_sort(const std::string& name) const;
    std::optional<Label> find_label(const std::string& name) const;
    std::optional<std::uint16_t> find_param(const std::string& name) const;
    std::optional<std::uint16_t> find_function(const std::string& name) const;

    /// Pairing that contains the sort, ordered (position, momentum) or (holomorphic, antiholomorphic).
    Pairing pairing_of(SortId s) const;
    bool is_complex(SortId s) const;
    std::string label_name(Label l) const;
};

}  // namespace fieldstar
