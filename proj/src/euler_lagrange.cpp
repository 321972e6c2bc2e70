#include "fieldstar/euler_lagrange.hpp"

#include "fieldstar/error.hpp"
#include "fieldstar/kernel.hpp"

#include <algorithm>

namespace fieldstar {

namespace detail {

void OperatorTerms::add(ELMonomial m, const Coeff& c) {
    if (c.is_zero()) return;
    std::sort(m.begin(), m.end());
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

}  // namespace detail

namespace {

template <typename Op>
Op compose(const Op& a, const Op& b, Op out) {
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            ELMonomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            out.add(std::move(m), ca * cb);
        }
    return out;
}

template <typename Op>
Op scaled(const Op& a, const Coeff& c, Op out) {
    for (const auto& [m, v] : a.terms()) out.add(m, v * c);
    return out;
}

bool has_kernel_at(const Monomial& m, Label label) {
    for (const auto& [a, k] : m.factors)
        if (a.kind == AtomKind::Delta && (a.label == label || a.other == label)) return true;
    return false;
}

MultiIndex sum_of(const ELMonomial& m, int dim) {
    MultiIndex s(dim);
    for (const auto& k : m) s += k.index;
    return s;
}

}  // namespace

ELOperator ELOperator::identity(Label label) {
    ELOperator op(label);
    op.add({}, Coeff(1));
    return op;
}

ELOperator ELOperator::generator(Label label, SortId sort, const MultiIndex& alpha) {
    ELOperator op(label);
    op.add({JetKey{sort, alpha}}, Coeff(1));
    return op;
}

ELOperator& ELOperator::operator+=(const ELOperator& o) {
    if (o.label_ != label_) throw LabelError("operators attached to different labels");
    for (const auto& [m, c] : o.terms()) add(m, c);
    return *this;
}

ELOperator operator*(const ELOperator& a, const ELOperator& b) {
    if (a.label_ != b.label_) throw LabelError("operators attached to different labels");
    return compose(a, b, ELOperator(a.label_));
}

ELOperator operator*(ELOperator a, const Coeff& c) { return scaled(a, c, ELOperator(a.label_)); }

DualELOperator DualELOperator::identity() {
    DualELOperator op;
    op.add({}, Coeff(1));
    return op;
}

DualELOperator DualELOperator::generator(SortId sort, const MultiIndex& alpha) {
    DualELOperator op;
    op.add({JetKey{sort, alpha}}, Coeff(1));
    return op;
}

DualELOperator& DualELOperator::operator+=(const DualELOperator& o) {
    for (const auto& [m, c] : o.terms()) add(m, c);
    return *this;
}

DualELOperator operator*(const DualELOperator& a, const DualELOperator& b) { return compose(a, b, DualELOperator()); }

DualELOperator operator*(DualELOperator a, const Coeff& c) { return scaled(a, c, DualELOperator()); }

DualELOperator transpose(const ELOperator& op) {
    DualELOperator d;
    for (const auto& [m, c] : op.terms()) d.add(m, c);
    return d;
}

Expr spatial_derivative(const Expr& t, Label label, const MultiIndex& alpha) {
    if (alpha.is_zero()) return t;
    Expr out(t.dim());
    for (const auto& [m, c] : t.terms()) {
        Expr term = Expr::term(m, c, t.dim());
        if (has_kernel_at(m, label)) {
            for (int i = 0; i < alpha.dim(); ++i)
                for (int k = 0; k < alpha[i]; ++k) term = kernel_derivative(term, label, i + 1);
        } else {
            term = total_derivative(term, label, alpha);
        }
        out += term;
    }
    return out;
}

Expr apply_el(const ELOperator& op, const Expr& t) {
    if (!op.terms().empty() && !t.is_zero() && labels_of(t).count(op.label()) == 0 && op.label() != kFree)
        throw LabelError("operator label does not occur in the expression");
    Expr out(t.dim());
    for (const auto& [m, c] : op.terms()) {
        Expr e = t;
        for (const auto& k : m) e = partial(e, Atom::jet(op.label(), k.sort, k.index));
        out += spatial_derivative(e, op.label(), sum_of(m, t.dim())) * c;
    }
    return out;
}

Expr apply_dual(const DualELOperator& op, const Expr& f, Label label) {
    Expr out(f.dim());
    for (const auto& [m, c] : op.terms()) {
        Expr e = f;
        for (const auto& k : m) e = partial(e, Atom::jet(label, k.sort, k.index));
        MultiIndex s = sum_of(m, f.dim());
        out += total_derivative(e, label, s) * (c * Coeff(parity_sign(s)));
    }
    return out;
}

Graded graded_partials(const Graded& g, Label label, SortId sort) {
    Graded out;
    for (const auto& [c, e] : g) {
        for (const auto& alpha : jet_indices(e, label, sort)) {
            Expr d = partial(e, Atom::jet(label, sort, alpha));
            if (d.is_zero()) continue;
            auto key = c + alpha;
            auto it = out.find(key);
            if (it == out.end())
                out.emplace(key, std::move(d));
            else {
                it->second += d;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

Graded graded_partials(const Expr& e, Label label, const std::vector<SortId>& sorts) {
    Graded g;
    if (e.is_zero()) return g;
    g.emplace(MultiIndex(e.dim()), e);
    for (SortId s : sorts) g = graded_partials(g, label, s);
    return g;
}

Expr el_derivative(const Expr& t, SortId sort, Label label, int k) {
    if (k < 1) throw Error("power must be at least 1");
    Graded g = graded_partials(t, label, std::vector<SortId>(static_cast<std::size_t>(k), sort));
    Expr out(t.dim());
    for (const auto& [c, e] : g) out += spatial_derivative(e, label, c);
    return out;
}

Expr dual_power(const Expr& f, const std::vector<SortId>& sorts, Label label) {
    Graded g = graded_partials(f, label, sorts);
    Expr out(f.dim());
    for (const auto& [c, e] : g) out += total_derivative(e, label, c) * Coeff(parity_sign(c));
    return out;
}

Expr variational_derivative(const Expr& f, SortId sort) { return dual_power(f, {sort}, kFree); }

Expr related_apply(const Expr& g, const std::vector<SortId>& sorts, const Expr& target, Label label) {
    Graded gr = graded_partials(g, label, sorts);
    Expr out(g.dim());
    for (const auto& [c, e] : gr) out += e * total_derivative(target, label, c);
    return out;
}

Expr pointwise_variation(const Expr& f, SortId sort, Label x, Label y) {
    Expr t = place(f, x) * delta(x, y, MultiIndex(f.dim()));
    return el_derivative(t, sort, x, 1);
}

Expr duality_residual(const ELOperator& op, const Expr& f, Label partner) {
    const Label x = op.label();
    if (x == kFree || x == partner) throw LabelError("operator needs its own label distinct from the partner");
    Expr t = place(f, x) * delta(x, partner, MultiIndex(f.dim()));
    Expr lhs = integrate_out(apply_el(op, t), x);
    Expr rhs = place(apply_dual(transpose(op), f), partner);
    return lhs - rhs;
}

Expr duality_power_residual(const Expr& f, SortId sort, int k, Label x, Label partner) {
    Expr t = place(f, x) * delta(x, partner, MultiIndex(f.dim()));
    Expr lhs = integrate_out(el_derivative(t, sort, x, k), x);
    Expr rhs = place(dual_power(f, std::vector<SortId>(static_cast<std::size_t>(k), sort)), partner);
    return lhs - rhs;
}

}  // namespace fieldstar
