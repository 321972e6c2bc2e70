#pragma once

#include "fieldstar/expr.hpp"

#include <map>
#include <vector>

namespace fieldstar {

struct JetKey {
    SortId sort = 0;
    MultiIndex index;
    friend auto operator<=>(const JetKey&, const JetKey&) = default;
    friend bool operator==(const JetKey&, const JetKey&) = default;
};

/// Multiset of generators d_{s,x;alpha}, kept sorted.
using ELMonomial = std::vector<JetKey>;

namespace detail {

class OperatorTerms {
public:
    const std::map<ELMonomial, Coeff>& terms() const { return terms_; }
    void add(ELMonomial m, const Coeff& c);

protected:
    std::map<ELMonomial, Coeff> terms_;
};

}  // namespace detail

/// Euler-Lagrange operator attached to one label: jet partials paired with a
/// spatial derivative on the kernel carrying that label.
class ELOperator : public detail::OperatorTerms {
public:
    explicit ELOperator(Label label = kFree) : label_(label) {}
    static ELOperator identity(Label label);
    static ELOperator generator(Label label, SortId sort, const MultiIndex& alpha);

    Label label() const { return label_; }

    ELOperator& operator+=(const ELOperator& o);
    friend ELOperator operator+(ELOperator a, const ELOperator& b) { return a += b; }
    friend ELOperator operator*(const ELOperator& a, const ELOperator& b);  // composition (multiset union)
    friend ELOperator operator*(ELOperator a, const Coeff& c);

private:
    Label label_;
};

/// Dual operator: jet partials followed by signed total derivatives.
class DualELOperator : public detail::OperatorTerms {
public:
    static DualELOperator identity();
    static DualELOperator generator(SortId sort, const MultiIndex& alpha);

    DualELOperator& operator+=(const DualELOperator& o);
    friend DualELOperator operator*(const DualELOperator& a, const DualELOperator& b);
    friend DualELOperator operator*(DualELOperator a, const Coeff& c);
};

/// Generator map d_{s;alpha} -> D_{s;alpha}, extended multiplicatively.
DualELOperator transpose(const ELOperator& op);

/// Spatial derivative at a label: on its kernel atoms when present, otherwise on its field content.
Expr spatial_derivative(const Expr& t, Label label, const MultiIndex& alpha);

Expr apply_el(const ELOperator& op, const Expr& t);
Expr apply_dual(const DualELOperator& op, const Expr& f, Label label = kFree);

/// Expression split by accumulated spatial multi-index.
using Graded = std::map<MultiIndex, Expr>;

/// One application of sum_alpha d/d(sort_alpha @ label) (x) s^alpha.
Graded graded_partials(const Graded& g, Label label, SortId sort);
Graded graded_partials(const Expr& e, Label label, const std::vector<SortId>& sorts);

/// (d_{sort,label})^k in the operator algebra.
Expr el_derivative(const Expr& t, SortId sort, Label label, int k);

/// Product of dual derivatives L_{s1} ... L_{sk} f in the dual algebra.
Expr dual_power(const Expr& f, const std::vector<SortId>& sorts, Label label = kFree);
Expr variational_derivative(const Expr& f, SortId sort);

/// Related differential operator of g: A -> sum_C (d^k g / d s...)_C D^C A.
Expr related_apply(const Expr& g, const std::vector<SortId>& sorts, const Expr& target, Label label = kFree);

/// d_{sort,x}(f, x) delta(x - y).
Expr pointwise_variation(const Expr& f, SortId sort, Label x, Label y);

/// integrate_out(apply_el(op, f@x delta(x - partner)), x) - apply_dual(op^t, f)@partner.
Expr duality_residual(const ELOperator& op, const Expr& f, Label partner);

/// Same check for (d_{sort,x})^k against L_sort^k.
Expr duality_power_residual(const Expr& f, SortId sort, int k, Label x, Label partner);

}  // namespace fieldstar
