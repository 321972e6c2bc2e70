#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace fieldstar {

/// Exact Gaussian rational a + b i with a, b in Q.
class Coeff {
public:
    Coeff() = default;
    Coeff(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
    Coeff(mpq_class re, mpq_class im = 0);

    static Coeff i();
    static Coeff ratio(long num, long den);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Coeff conj() const { return Coeff(re_, -im_); }

    Coeff& operator+=(const Coeff& o);
    Coeff& operator-=(const Coeff& o);
    Coeff& operator*=(const Coeff& o);
    Coeff& operator/=(const Coeff& o);

    friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
    friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
    friend Coeff operator*(Coeff a, const Coeff& b) { return a *= b; }
    friend Coeff operator/(Coeff a, const Coeff& b) { return a /= b; }
    Coeff operator-() const { return Coeff(-re_, -im_); }

    friend bool operator==(const Coeff& a, const Coeff& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

    /// Plain text, e.g. "3/2", "-i", "1/2 - 3*i" (no surrounding parentheses).
    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Coeff& c);

/// Rational as "p/q" (or "p" when q = 1).
std::string rational_string(const mpq_class& q);

Coeff factorial(int k);
Coeff binomial(int n, int k);

}  // namespace fieldstar
