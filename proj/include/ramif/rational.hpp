#pragma once

// Exact rational and Gaussian-rational arithmetic (GMP mpq) for the
// polynomial representation layer, plus Bernoulli numbers.

#include "ramif/mp.hpp"

#include <gmp.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ramif {

class Rational
{
public:
    Rational() { mpq_init(v_); }
    Rational(long n) : Rational() { mpq_set_si(v_, n, 1); mpq_canonicalize(v_); }
    Rational(int n) : Rational(static_cast<long>(n)) {}
    Rational(long num, long den) : Rational()
    {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        mpq_set_si(v_, num, 1);
        mpq_t d;
        mpq_init(d);
        mpq_set_si(d, den, 1);
        mpq_div(v_, v_, d);
        mpq_clear(d);
    }
    Rational(const Rational &o) : Rational() { mpq_set(v_, o.v_); }
    Rational(Rational &&o) noexcept : Rational() { mpq_swap(v_, o.v_); }
    Rational &operator=(const Rational &o)
    {
        if (this != &o) mpq_set(v_, o.v_);
        return *this;
    }
    Rational &operator=(Rational &&o) noexcept
    {
        mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rational() { mpq_clear(v_); }

    mpq_ptr raw() { return v_; }
    mpq_srcptr raw() const { return v_; }

    bool is_zero() const { return mpq_sgn(v_) == 0; }

    Rational &operator+=(const Rational &o) { mpq_add(v_, v_, o.v_); return *this; }
    Rational &operator-=(const Rational &o) { mpq_sub(v_, v_, o.v_); return *this; }
    Rational &operator*=(const Rational &o) { mpq_mul(v_, v_, o.v_); return *this; }
    Rational &operator/=(const Rational &o)
    {
        if (mpq_sgn(o.v_) == 0) throw std::invalid_argument("rational division by zero");
        mpq_div(v_, v_, o.v_);
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational &b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational &b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational &b) { a /= b; return a; }
    friend Rational operator-(Rational a) { mpq_neg(a.v_, a.v_); return a; }
    friend bool operator==(const Rational &a, const Rational &b) { return mpq_equal(a.v_, b.v_) != 0; }
    friend bool operator!=(const Rational &a, const Rational &b) { return !(a == b); }

    Real to_real() const
    {
        Real r;
        mpfr_set_q(r.raw(), v_, MPFR_RNDN);
        return r;
    }

    std::string str() const
    {
        char *s = mpq_get_str(nullptr, 10, v_);
        std::string out(s);
        void (*freef)(void *, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freef);
        freef(s, std::strlen(s) + 1);
        return out;
    }

private:
    mpq_t v_;
};

// Gaussian rationals a + bi. Enough field structure for exact basis
// conversions at rational half-plane test points.
class RationalComplex
{
public:
    RationalComplex() = default;
    RationalComplex(Rational re) : re_(std::move(re)) {}
    RationalComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    RationalComplex(long n) : re_(n) {}
    RationalComplex(int n) : re_(static_cast<long>(n)) {}

    const Rational &real() const { return re_; }
    const Rational &imag() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    RationalComplex &operator+=(const RationalComplex &o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    RationalComplex &operator-=(const RationalComplex &o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    RationalComplex &operator*=(const RationalComplex &o)
    {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    RationalComplex &operator/=(const RationalComplex &o)
    {
        Rational d = o.re_ * o.re_ + o.im_ * o.im_;
        if (d.is_zero()) throw std::invalid_argument("gaussian-rational division by zero");
        Rational r = (re_ * o.re_ + im_ * o.im_) / d;
        Rational i = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend RationalComplex operator+(RationalComplex a, const RationalComplex &b) { a += b; return a; }
    friend RationalComplex operator-(RationalComplex a, const RationalComplex &b) { a -= b; return a; }
    friend RationalComplex operator*(RationalComplex a, const RationalComplex &b) { a *= b; return a; }
    friend RationalComplex operator/(RationalComplex a, const RationalComplex &b) { a /= b; return a; }
    friend RationalComplex operator-(RationalComplex a)
    {
        a.re_ = -a.re_;
        a.im_ = -a.im_;
        return a;
    }
    friend bool operator==(const RationalComplex &a, const RationalComplex &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const RationalComplex &a, const RationalComplex &b) { return !(a == b); }

    std::string str() const { return re_.str() + " + (" + im_.str() + ")i"; }

private:
    Rational re_{0L};
    Rational im_{0L};
};

inline RationalComplex pow_int(const RationalComplex &base, long e)
{
    if (e < 0) return RationalComplex(Rational(1)) / pow_int(base, -e);
    RationalComplex acc{Rational(1)};
    RationalComplex b = base;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

inline Rational binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return Rational(0);
    Rational out;
    mpz_bin_uiui(mpq_numref(out.raw()), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

inline Rational factorial(long n)
{
    Rational out;
    mpz_fac_ui(mpq_numref(out.raw()), static_cast<unsigned long>(n));
    return out;
}

// Bernoulli numbers B_0..B_n by the defining recurrence
// sum_{k=0}^{n} binom(n+1, k) B_k = 0, B_0 = 1.
inline std::vector<Rational> bernoulli_upto(int n)
{
    std::vector<Rational> b;
    b.reserve(static_cast<size_t>(n) + 1);
    b.push_back(Rational(1));
    for (int m = 1; m <= n; ++m) {
        Rational acc(0);
        for (int k = 0; k < m; ++k) {
            acc += binomial(m + 1, k) * b[static_cast<size_t>(k)];
        }
        b.push_back(-acc / binomial(m + 1, m));
    }
    return b;
}

inline Rational bernoulli(int r)
{
    if (r < 0) throw std::invalid_argument("bernoulli index must be nonnegative");
    if (r > 1 && r % 2 != 0) {
        throw std::invalid_argument("bernoulli(" + std::to_string(r) + "): odd index > 1 rejected");
    }
    return bernoulli_upto(r)[static_cast<size_t>(r)];
}

} // namespace ramif
