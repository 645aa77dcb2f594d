#pragma once

// Complex numbers over ramif::Real. std::complex is only specified for the
// builtin floating types, so we carry our own minimal value type.

#include "ramif/mp.hpp"

#include <string>
#include <utility>

namespace ramif {

class Complex
{
public:
    Complex() = default;
    Complex(Real re) : re_(std::move(re)) {}
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
    Complex(double re) : re_(re) {}
    Complex(double re, double im) : re_(re), im_(im) {}
    Complex(long re) : re_(re) {}
    Complex(int re) : re_(re) {}

    const Real &real() const { return re_; }
    const Real &imag() const { return im_; }
    Real &real() { return re_; }
    Real &imag() { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    Complex &operator+=(const Complex &o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Complex &operator-=(const Complex &o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Complex &operator*=(const Complex &o)
    {
        Real r = re_ * o.re_ - im_ * o.im_;
        Real i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Complex &operator*=(const Real &s)
    {
        re_ *= s;
        im_ *= s;
        return *this;
    }
    Complex &operator*=(long k)
    {
        re_ *= k;
        im_ *= k;
        return *this;
    }
    Complex &operator/=(const Complex &o)
    {
        Real d = o.re_ * o.re_ + o.im_ * o.im_;
        Real r = (re_ * o.re_ + im_ * o.im_) / d;
        Real i = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Complex &operator/=(const Real &s)
    {
        re_ /= s;
        im_ /= s;
        return *this;
    }
    Complex &operator/=(long k)
    {
        re_ /= k;
        im_ /= k;
        return *this;
    }

    friend Complex operator+(Complex a, const Complex &b) { a += b; return a; }
    friend Complex operator-(Complex a, const Complex &b) { a -= b; return a; }
    friend Complex operator*(Complex a, const Complex &b) { a *= b; return a; }
    friend Complex operator*(Complex a, const Real &s) { a *= s; return a; }
    friend Complex operator*(const Real &s, Complex a) { a *= s; return a; }
    friend Complex operator/(Complex a, const Complex &b) { a /= b; return a; }
    friend Complex operator/(Complex a, const Real &s) { a /= s; return a; }
    friend Complex operator-(Complex a)
    {
        a.re_ = -a.re_;
        a.im_ = -a.im_;
        return a;
    }
    friend bool operator==(const Complex &a, const Complex &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Complex &a, const Complex &b) { return !(a == b); }

    std::string str() const { return re_.str() + (im_.sign() >= 0 ? "+" : "") + im_.str() + "i"; }

private:
    Real re_{0.0};
    Real im_{0.0};
};

inline Complex conj(const Complex &a) { return Complex(a.real(), -a.imag()); }

inline Real norm_sq(const Complex &a) { return a.real() * a.real() + a.imag() * a.imag(); }

inline Real abs(const Complex &a)
{
    Real r;
    // hypot avoids spurious overflow/underflow at extreme exponents
    mpfr_hypot(r.raw(), a.real().raw(), a.imag().raw(), MPFR_RNDN);
    return r;
}

inline Complex pow_int(const Complex &base, long e)
{
    if (e < 0) return Complex(Real(1)) / pow_int(base, -e);
    Complex acc(Real(1));
    Complex b = base;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

// exp(i t) for real t
inline Complex cis(const Real &t)
{
    Real c, s;
    mpfr_sin_cos(s.raw(), c.raw(), t.raw(), MPFR_RNDN);
    return Complex(std::move(c), std::move(s));
}

inline Complex exp(const Complex &a)
{
    Real m = exp(a.real());
    Complex u = cis(a.imag());
    return u * m;
}

inline Complex i_unit() { return Complex(Real(0), Real(1)); }

} // namespace ramif
