#pragma once

#include "fieldstar/coeff.hpp"
#include "fieldstar/multi_index.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace fieldstar {

/// Point label. kFree marks jet variables not yet attached to a point.
using Label = std::uint16_t;
inline constexpr Label kFree = 0;

using SortId = std::uint16_t;

enum class AtomKind : std::uint8_t {
    Jet,          // jet variable (label, sort, alpha)
    Func,         // U^(order)(sort_0 @ label)
    Param,        // declared symbolic constant
    Delta,        // d_label^index delta(label - other), label < other
    DeltaAtZero,  // formal value (d^index delta)(0) left by coinciding labels
    Integral,     // pending integral of the whole term over label
};

/// One commuting factor of a monomial.
struct Atom {
    AtomKind kind = AtomKind::Jet;
    Label label = kFree;
    Label other = kFree;
    SortId sort = 0;
    std::uint16_t id = 0;     // Func / Param identifier
    std::uint16_t order = 0;  // Func derivative order
    /// Func only: U^(j)(0) = 0 is known for j < vanish; -1 means unknown.
    std::int16_t vanish = -1;
    MultiIndex index;

    static Atom jet(Label label, SortId sort, const MultiIndex& alpha);
    static Atom func(Label label, SortId sort, int dim, std::uint16_t id, std::uint16_t order, std::int16_t vanish);
    static Atom param(std::uint16_t id);
    static Atom integral(Label label);

    /// The order-zero jet variable a function symbol is evaluated at.
    Atom argument() const;

    friend bool operator==(const Atom& a, const Atom& b) = default;
    friend bool operator<(const Atom& a, const Atom& b);
};

struct Monomial {
    std::vector<std::pair<Atom, std::uint32_t>> factors;  // sorted by atom, exponents > 0

    /// Number of jet and function factors counted with multiplicity.
    int degree() const;
    bool is_one() const { return factors.empty(); }
    bool has_kind(AtomKind k) const;

    friend bool operator==(const Monomial& a, const Monomial& b) = default;
};

/// Canonical order: degree, then lexicographic in factors.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Product of two monomials; returns false when the product vanishes identically.
bool multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out);

/// Polynomial over Q[i] in labelled atoms. A field expression uses only kFree
/// jets; a tensor expression attaches jets to labels and carries delta atoms.
class Expr {
public:
    using Terms = std::map<Monomial, Coeff, MonomialLess>;

    Expr() = default;
    explicit Expr(int dim) : dim_(dim) {}
    Expr(const Coeff& c, int dim);

    static Expr atom(const Atom& a, int dim);
    static Expr term(const Monomial& m, const Coeff& c, int dim);
    static Expr jet(Label label, SortId sort, const MultiIndex& alpha);
    static Expr param(std::uint16_t id, int dim);

    /// 0 means "any dimension" (pure constants).
    int dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Returns c when the expression is the constant c (or zero), throws otherwise.
    Coeff constant_value() const;
    bool is_constant() const;

    void add_term(const Monomial& m, const Coeff& c);

    Expr& operator+=(const Expr& o);
    Expr& operator-=(const Expr& o);
    Expr& operator*=(const Expr& o);
    Expr& operator*=(const Coeff& c);

    friend Expr operator+(Expr a, const Expr& b) { return a += b; }
    friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator*(Expr a, const Coeff& c) { return a *= c; }
    friend Expr operator*(const Coeff& c, Expr a) { return a *= c; }
    Expr operator-() const;

    friend bool operator==(const Expr& a, const Expr& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    void adopt_dim(int d);

    Terms terms_;
    int dim_ = 0;
};

Expr pow(const Expr& e, unsigned k);

/// Formal partial derivative by a jet variable (chain rule through function symbols).
Expr partial(const Expr& e, const Atom& var);

/// Total derivative D_dir at a label: acts on jets, function symbols and delta atoms of that label.
Expr total_derivative(const Expr& e, Label label, int dir);
Expr total_derivative(const Expr& e, Label label, const MultiIndex& alpha);

/// Derivative acting on the delta atoms carrying a label only.
Expr kernel_derivative(const Expr& e, Label label, int dir);

/// Canonical delta atom for d_a^gamma delta(a - b).
Expr delta(Label a, Label b, const MultiIndex& gamma);

/// Rebuild every monomial as the product of the images of its atoms.
Expr transform_atoms(const Expr& e, const std::function<Expr(const Atom&)>& f);

/// Moves everything carried by label `from` to label `to`.
Expr relabel(const Expr& e, Label from, Label to);
inline Expr place(const Expr& f, Label at) { return at == kFree ? f : relabel(f, kFree, at); }
/// Inverse of place; throws if other labels or kernel atoms remain.
Expr detach(const Expr& e, Label at);

std::set<Label> labels_of(const Expr& e);
std::set<SortId> sorts_of(const Expr& e);

/// Jet variables of one sort at one label, including function-symbol arguments.
std::set<MultiIndex> jet_indices(const Expr& e, Label label, SortId sort);

/// Value at the jet origin (all jet variables set to 0).
struct OriginValue {
    Expr value;
    bool condition_b() const { return value.is_zero(); }
};
OriginValue eval_at_origin(const Expr& f);

inline bool canonical_equal(const Expr& a, const Expr& b) { return a == b; }

}  // namespace fieldstar
