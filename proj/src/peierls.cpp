#include "fieldstar/peierls.hpp"

#include "fieldstar/error.hpp"
#include "fieldstar/star.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fieldstar::peierls {

double omega(int k, double m) { return std::sqrt(static_cast<double>(k) * k + m * m); }

SpectralField::SpectralField(int modes, double scale)
    : modes_(modes), scale_(scale), c_(static_cast<std::size_t>(2 * modes + 1)) {
    if (modes < 1) throw Error("mode cutoff must be at least 1");
}

SpectralField SpectralField::from_samples(int modes, const std::vector<double>& samples) {
    const int n = static_cast<int>(samples.size());
    if (n <= 2 * modes) throw DimensionMismatch("need more than 2M samples");
    SpectralField f(modes);
    for (int k = -modes; k <= modes; ++k) {
        std::complex<double> acc = 0;
        for (int j = 0; j < n; ++j) {
            double x = 2 * std::numbers::pi * j / n;
            acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -k * x);
        }
        f[k] = acc / static_cast<double>(n);
    }
    return f;
}

SpectralField SpectralField::from_function(int modes, const std::function<double(double)>& fn, int samples) {
    if (samples <= 0) samples = 4 * modes + 8;
    std::vector<double> v(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) v[static_cast<std::size_t>(j)] = fn(2 * std::numbers::pi * j / samples);
    return from_samples(modes, v);
}

double SpectralField::evaluate(double x) const {
    std::complex<double> acc = 0;
    for (int k = -modes_; k <= modes_; ++k) acc += (*this)[k] * std::polar(1.0, k * x);
    return scale_ * acc.real();
}

double SpectralField::reality_defect() const {
    double d = 0;
    for (int k = 0; k <= modes_; ++k) d = std::max(d, std::abs((*this)[-k] - std::conj((*this)[k])));
    return d;
}

ModeValue green_mode(int k, double m, double t, Convention conv) {
    const double w = omega(k, m);
    if (conv == Convention::Swapped) return {std::cos(w * t), -w * std::sin(w * t), -w * w * std::cos(w * t)};
    if (w == 0.0) return {t, 1.0, 0.0};
    return {std::sin(w * t) / w, std::cos(w * t), -w * std::sin(w * t)};
}

SpectralField green_eval(double m, double t, int modes, Convention conv) {
    SpectralField g(modes, 1.0 / (2 * std::numbers::pi));
    for (int k = -modes; k <= modes; ++k) g[k] = green_mode(k, m, t, conv).value;
    return g;
}

double green_pde_residual(double m, double t, int modes, Convention conv) {
    double r = 0;
    for (int k = -modes; k <= modes; ++k) {
        ModeValue v = green_mode(k, m, t, conv);
        double w = omega(k, m);
        r = std::max(r, std::abs(v.dtt + w * w * v.value));
    }
    return r;
}

namespace {

void check_cutoffs(const SpectralField& a, const SpectralField& b) {
    if (a.modes() != b.modes()) throw DimensionMismatch("mode cutoffs differ");
}

}  // namespace

SpectralField cauchy_solve(const SpectralField& phi0, const SpectralField& pi0, double m, double t, Convention conv) {
    check_cutoffs(phi0, pi0);
    SpectralField out(phi0.modes(), phi0.scale());
    for (int k = -phi0.modes(); k <= phi0.modes(); ++k) {
        ModeValue g = green_mode(k, m, t, conv);
        out[k] = g.value * pi0[k] + g.dt * phi0[k];
    }
    return out;
}

SpectralField cauchy_velocity(const SpectralField& phi0, const SpectralField& pi0, double m, double t,
                              Convention conv) {
    check_cutoffs(phi0, pi0);
    SpectralField out(phi0.modes(), phi0.scale());
    for (int k = -phi0.modes(); k <= phi0.modes(); ++k) {
        ModeValue g = green_mode(k, m, t, conv);
        out[k] = g.dt * pi0[k] + g.dtt * phi0[k];
    }
    return out;
}

double energy(const SpectralField& phi, const SpectralField& phidot, double m) {
    check_cutoffs(phi, phidot);
    double e = 0;
    for (int k = -phi.modes(); k <= phi.modes(); ++k) {
        double w = omega(k, m);
        e += std::norm(phidot[k]) + w * w * std::norm(phi[k]);
    }
    return e;
}

ModeExpr ModeExpr::term(int a, int b, int p, const Coeff& c) {
    ModeExpr e;
    if (!c.is_zero()) e.terms_[{a, b, p}] = c;
    return e;
}

ModeExpr& ModeExpr::operator+=(const ModeExpr& o) {
    for (const auto& [k, c] : o.terms_) {
        auto [it, ins] = terms_.try_emplace(k, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

ModeExpr operator-(ModeExpr a, const ModeExpr& b) { return a += b * Coeff(-1); }

ModeExpr operator*(const ModeExpr& a, const ModeExpr& b) {
    ModeExpr r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) r += ModeExpr::term(ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ca * cb);
    return r;
}

ModeExpr operator*(ModeExpr a, const Coeff& c) {
    if (c.is_zero()) return ModeExpr();
    for (auto& [k, v] : a.terms_) v *= c;
    return a;
}

ModeExpr ModeExpr::derivative(int var) const {
    ModeExpr r;
    for (const auto& [k, c] : terms_)
        r += term(k[0], k[1], k[2] + 1, c * Coeff::i() * Coeff(k[static_cast<std::size_t>(var)]));
    return r;
}

ModeExpr ModeExpr::coincide() const {
    ModeExpr r;
    for (const auto& [k, c] : terms_) r += term(k[0] + k[1], 0, k[2], c);
    return r;
}

ModeExpr ModeExpr::swap_times() const {
    ModeExpr r;
    for (const auto& [k, c] : terms_) r += term(k[1], k[0], k[2], c);
    return r;
}

std::complex<double> ModeExpr::evaluate(double w, double t, double s) const {
    std::complex<double> acc = 0;
    for (const auto& [k, c] : terms_) {
        std::complex<double> cc(c.re().get_d(), c.im().get_d());
        acc += cc * std::pow(w, k[2]) * std::polar(1.0, w * (k[0] * t + k[1] * s));
    }
    return acc;
}

std::string ModeExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (k[2] != 0) os << "*w^" << k[2];
        if (k[0] != 0 || k[1] != 0) os << "*exp(i*w*(" << k[0] << "*t + " << k[1] << "*s))";
    }
    return os.str();
}

ModeExpr green_symbol(Time at, int order, Convention conv) {
    int a = at == Time::S ? 0 : 1;
    int b = at == Time::T ? 0 : (at == Time::S ? 1 : -1);
    ModeExpr g = conv == Convention::Corrected
                     ? ModeExpr::term(a, b, -1, Coeff::ratio(-1, 2) * Coeff::i()) +
                           ModeExpr::term(-a, -b, -1, Coeff::ratio(1, 2) * Coeff::i())
                     : ModeExpr::term(a, b, 0, Coeff::ratio(1, 2)) + ModeExpr::term(-a, -b, 0, Coeff::ratio(1, 2));
    const int var = at == Time::S ? 1 : 0;
    for (int j = 0; j < order; ++j) g = g.derivative(var);
    return g;
}

std::map<SortId, ModeExpr> field_propagator(Time at, const Pairing& pr, Convention conv) {
    return {{pr.first, green_symbol(at, 1, conv)}, {pr.second, green_symbol(at, 0, conv)}};
}

namespace {

/// c with e = c * delta(x - y); throws if e has another shape.
Coeff delta_coefficient(const Expr& e, int dim) {
    if (e.is_zero()) return Coeff(0);
    Expr ref = delta(kX, kY, MultiIndex(dim));
    const auto& [m, c] = *e.terms().begin();
    if (e.size() != 1 || !(m == ref.terms().begin()->first))
        throw ConsistencyError("basic bracket is not a multiple of delta");
    return c;
}

}  // namespace

Coeff basic_bracket(SortId a, SortId b, const Pairing& pr, int dim) {
    MultiIndex z(dim);
    return delta_coefficient(bracket_fn(Expr::jet(kFree, a, z), kX, Expr::jet(kFree, b, z), kY, Kernel::delta(dim), pr),
                             dim);
}

ModeExpr peierls_bracket(const Pairing& pr, int dim, Convention conv) {
    auto at_t = field_propagator(Time::T, pr, conv), at_s = field_propagator(Time::S, pr, conv);
    ModeExpr r;
    for (const auto& [a, pa] : at_t)
        for (const auto& [b, pb] : at_s) r += pa * pb * basic_bracket(a, b, pr, dim);
    return r;
}

PeierlsStar peierls_star(const Pairing& pr, int dim, int order, Convention conv) {
    auto at_t = field_propagator(Time::T, pr, conv), at_s = field_propagator(Time::S, pr, conv);
    PeierlsStar out;
    out.factorizes = true;
    MultiIndex z(dim);
    for (const auto& [a, pa] : at_t)
        for (const auto& [b, pb] : at_s) {
            Expr fa = Expr::jet(kFree, a, z), fb = Expr::jet(kFree, b, z);
            HbarSeries s = star_fn(fa, kX, fb, kY, Kernel::delta(dim), pr, order);
            if (!s.exact) out.exact = false;
            for (int k = 2; k <= s.order; ++k)
                if (!s[k].is_zero()) out.exact = false;
            if (s[0] != place(fa, kX) * place(fb, kY)) out.factorizes = false;
            out.product[{a, b}] = pa * pb;
            if (s.order >= 1) out.hbar1 += pa * pb * delta_coefficient(s[1], dim);
        }
    for (const auto& [key, c] : out.product)
        if (!(c == at_t[key.first] * at_s[key.second])) out.factorizes = false;
    out.matches_bracket = out.hbar1 == peierls_bracket(pr, dim, conv);
    return out;
}

ModeExpr peierls_commutator(const Pairing& pr, int dim, int order, Convention conv) {
    ModeExpr forward = peierls_star(pr, dim, order, conv).hbar1;
    return forward - forward.swap_times();
}

}  // namespace fieldstar::peierls
