#include "fieldstar/coeff.hpp"

#include <ostream>
#include <stdexcept>

namespace fieldstar {

Coeff::Coeff(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

Coeff Coeff::i() { return Coeff(0, 1); }

Coeff Coeff::ratio(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Coeff(q);
}

Coeff& Coeff::operator+=(const Coeff& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Coeff& Coeff::operator*=(const Coeff& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

Coeff& Coeff::operator/=(const Coeff& o) {
    if (o.is_zero()) throw std::domain_error("division by zero coefficient");
    mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
    Coeff inv(o.re_ / n, -o.im_ / n);
    return *this *= inv;
}

std::string rational_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Coeff::to_string() const {
    if (sgn(im_) == 0) return rational_string(re_);
    std::string imag;
    if (im_ == 1)
        imag = "i";
    else if (im_ == -1)
        imag = "-i";
    else
        imag = rational_string(im_) + "*i";
    if (sgn(re_) == 0) return imag;
    if (sgn(im_) < 0) {
        mpq_class a = -im_;
        return rational_string(re_) + " - " + (a == 1 ? std::string("i") : rational_string(a) + "*i");
    }
    return rational_string(re_) + " + " + imag;
}

std::ostream& operator<<(std::ostream& os, const Coeff& c) { return os << c.to_string(); }

Coeff factorial(int k) {
    mpz_class r = 1;
    for (int j = 2; j <= k; ++j) r *= j;
    return Coeff(mpq_class(r));
}

Coeff binomial(int n, int k) {
    if (k < 0 || k > n) return Coeff(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Coeff(mpq_class(r));
}

}  // namespace fieldstar
