#include "fieldstar/kernel.hpp"

#include "fieldstar/error.hpp"

namespace fieldstar {

const char* to_string(KernelClass k) {
    switch (k) {
        case KernelClass::Symmetric:
            return "symmetric";
        case KernelClass::Antisymmetric:
            return "antisymmetric";
        case KernelClass::Mixed:
            return "mixed";
    }
    return "?";
}

Kernel Kernel::delta(int dim, const Coeff& c) {
    Kernel k(dim);
    k.add(MultiIndex(dim), c);
    return k;
}

Kernel Kernel::derivative(const MultiIndex& gamma, const Coeff& c) {
    Kernel k(gamma.dim());
    k.add(gamma, c);
    return k;
}

void Kernel::add(const MultiIndex& gamma, const Coeff& c) {
    if (dim_ == 0) dim_ = gamma.dim();
    if (gamma.dim() != dim_) throw DimensionMismatch("kernel multi-index has wrong length");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(gamma, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Kernel& Kernel::operator+=(const Kernel& o) {
    if (dim_ == 0) dim_ = o.dim_;
    if (o.dim_ != 0 && o.dim_ != dim_) throw DimensionMismatch("kernels over different dimensions");
    for (const auto& [g, c] : o.terms_) add(g, c);
    return *this;
}

Kernel operator*(Kernel a, const Coeff& c) {
    Kernel r(a.dim_);
    for (const auto& [g, v] : a.terms_) r.add(g, v * c);
    return r;
}

KernelClass classify(const Kernel& p) {
    bool even = false, odd = false;
    for (const auto& [g, c] : p.terms()) (g.order() % 2 == 0 ? even : odd) = true;
    if (odd && even) return KernelClass::Mixed;
    return odd ? KernelClass::Antisymmetric : KernelClass::Symmetric;
}

std::pair<Kernel, Kernel> split(const Kernel& p) {
    Kernel even(p.dim()), odd(p.dim());
    for (const auto& [g, c] : p.terms()) (g.order() % 2 == 0 ? even : odd).add(g, c);
    return {even, odd};
}

Kernel transpose(const Kernel& p) {
    Kernel r(p.dim());
    for (const auto& [g, c] : p.terms()) r.add(g, c * Coeff(parity_sign(g)));
    return r;
}

Kernel conj(const Kernel& p) {
    Kernel r(p.dim());
    for (const auto& [g, c] : p.terms()) r.add(g, c.conj());
    return r;
}

Expr kernel_at(const Kernel& p, Label a, Label b, const MultiIndex& extra) {
    if (a == b) throw LabelError("kernel needs two distinct labels");
    Expr out(p.dim());
    for (const auto& [g, c] : p.terms()) out += delta(a, b, g + extra) * c;
    return out;
}

Expr kernel_at(const Kernel& p, Label a, Label b) { return kernel_at(p, a, b, MultiIndex(p.dim())); }

Expr pair_kernel(const Kernel& p, const Expr& a, Label at) {
    Expr out(a.dim());
    for (const auto& [g, c] : p.terms()) out += total_derivative(a, at, g) * (c * Coeff(parity_sign(g)));
    return out;
}

namespace {

bool involves(const Atom& a, Label l) { return a.kind == AtomKind::Delta && (a.label == l || a.other == l); }

/// Sift one term against its first delta atom in `a`. Returns false if none.
bool sift_term(const Monomial& m, const Coeff& c, Label a, int dim, Expr& out) {
    std::size_t pick = m.factors.size();
    for (std::size_t i = 0; i < m.factors.size(); ++i)
        if (involves(m.factors[i].first, a)) {
            pick = i;
            break;
        }
    if (pick == m.factors.size()) return false;

    const Atom atom = m.factors[pick].first;
    Monomial rest = m;
    if (rest.factors[pick].second == 1)
        rest.factors.erase(rest.factors.begin() + static_cast<std::ptrdiff_t>(pick));
    else
        --rest.factors[pick].second;
    // The pending integral over `a` is consumed by this integration.
    for (auto it = rest.factors.begin(); it != rest.factors.end(); ++it)
        if (it->first.kind == AtomKind::Integral && it->first.label == a) {
            rest.factors.erase(it);
            break;
        }

    const Label partner = atom.label == a ? atom.other : atom.label;
    // int A(a) d_a^g delta(a-b) da = (-1)^|g| (D^g A)(b); for d_b^g delta(b-a) the signs cancel.
    const int sign = atom.label == a ? parity_sign(atom.index) : 1;
    Expr body = Expr::term(rest, c * Coeff(sign), dim);
    body = total_derivative(body, a, atom.index);
    out += relabel(body, a, partner);
    return true;
}

}  // namespace

Expr integrate_out(const Expr& t, Label a) {
    Expr out(t.dim());
    for (const auto& [m, c] : t.terms())
        if (!sift_term(m, c, a, t.dim(), out)) throw NonIntegrable("non-integrable term: no delta atom in the label");
    return out;
}

Expr integrate(const Expr& t, Label a) {
    Expr out(t.dim());
    const Expr mark = Expr::atom(Atom::integral(a), t.dim());
    for (const auto& [m, c] : t.terms()) {
        if (sift_term(m, c, a, t.dim(), out)) continue;
        out += Expr::term(m, c, t.dim()) * mark;
    }
    return out;
}

Expr settle(const Expr& t) {
    Expr cur = t;
    for (;;) {
        Expr next(cur.dim());
        bool changed = false;
        for (const auto& [m, c] : cur.terms()) {
            bool done = false;
            for (const auto& [a, k] : m.factors) {
                if (a.kind != AtomKind::Integral) continue;
                bool has_delta = false;
                for (const auto& [b, j] : m.factors)
                    if (involves(b, a.label)) has_delta = true;
                if (has_delta) {
                    sift_term(m, c, a.label, cur.dim(), next);
                    done = changed = true;
                    break;
                }
            }
            if (!done) next.add_term(m, c);
        }
        if (!changed) return cur;
        cur = std::move(next);
    }
}

}  // namespace fieldstar
