#pragma once

// Arbitrary-precision real numbers (MPFR) with a single process-wide
// working precision, plus the handful of constants and special values
// the rest of the library needs.

#include <mpfr.h>

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>

namespace ramif {

namespace mp {

// Process-wide working precision in bits. Set once at startup (or at the
// top of a test) before creating values; values created afterwards carry it.
inline mpfr_prec_t &working_precision()
{
    static mpfr_prec_t bits = 128;
    return bits;
}

inline void set_precision_bits(long bits)
{
    if (bits < 24 || bits > 16384) {
        throw std::invalid_argument("precision_bits out of range [24, 16384]");
    }
    working_precision() = static_cast<mpfr_prec_t>(bits);
}

inline long precision_bits() { return static_cast<long>(working_precision()); }

// Decimal digits sufficient to round-trip a value of the working precision.
inline int roundtrip_digits()
{
    return static_cast<int>(static_cast<double>(working_precision()) * 0.30103) + 4;
}

} // namespace mp

class Real
{
public:
    Real() { mpfr_init2(v_, mp::working_precision()); mpfr_set_zero(v_, 1); }
    Real(double x) : Real() { mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(long x) : Real() { mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x) : Real() { mpfr_set_si(v_, x, MPFR_RNDN); }
    explicit Real(const std::string &s) : Real()
    {
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
            throw std::invalid_argument("unparsable real literal: " + s);
        }
    }
    Real(const Real &o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real &&o) noexcept { mpfr_init2(v_, mp::working_precision()); mpfr_swap(v_, o.v_); }
    Real &operator=(const Real &o)
    {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real &operator=(Real &&o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real &operator+=(const Real &o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real &operator-=(const Real &o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real &operator*=(const Real &o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real &operator/=(const Real &o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real &operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
    Real &operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }

    friend Real operator+(Real a, const Real &b) { a += b; return a; }
    friend Real operator-(Real a, const Real &b) { a -= b; return a; }
    friend Real operator*(Real a, const Real &b) { a *= b; return a; }
    friend Real operator/(Real a, const Real &b) { a /= b; return a; }
    friend Real operator-(Real a) { mpfr_neg(a.v_, a.v_, MPFR_RNDN); return a; }

    friend bool operator==(const Real &a, const Real &b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real &a, const Real &b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Real &a, const Real &b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real &a, const Real &b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real &a, const Real &b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real &a, const Real &b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    // Decimal string that parses back to the identical bit pattern at the
    // same precision.
    std::string str(int digits = 0) const
    {
        if (mpfr_zero_p(v_)) return "0";
        if (digits <= 0) digits = mp::roundtrip_digits();
        mpfr_exp_t e = 0;
        char *s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
        std::string mant(s);
        mpfr_free_str(s);
        std::string sign;
        if (!mant.empty() && mant[0] == '-') {
            sign = "-";
            mant.erase(0, 1);
        }
        // mantissa digits d1 d2 ... represent 0.d1d2... * 10^e
        std::string out = sign + "0." + mant + "e" + std::to_string(static_cast<long>(e));
        return out;
    }

private:
    mpfr_t v_;
};

inline Real abs(Real a) { mpfr_abs(a.raw(), a.raw(), MPFR_RNDN); return a; }
inline Real sqrt(Real a) { mpfr_sqrt(a.raw(), a.raw(), MPFR_RNDN); return a; }
inline Real exp(Real a) { mpfr_exp(a.raw(), a.raw(), MPFR_RNDN); return a; }
inline Real log(Real a) { mpfr_log(a.raw(), a.raw(), MPFR_RNDN); return a; }
inline Real cos(Real a) { mpfr_cos(a.raw(), a.raw(), MPFR_RNDN); return a; }
inline Real sin(Real a) { mpfr_sin(a.raw(), a.raw(), MPFR_RNDN); return a; }
inline Real floor(Real a) { mpfr_floor(a.raw(), a.raw()); return a; }

inline Real pow_int(const Real &base, long e)
{
    Real r;
    if (e >= 0) {
        mpfr_pow_ui(r.raw(), base.raw(), static_cast<unsigned long>(e), MPFR_RNDN);
    } else {
        mpfr_pow_si(r.raw(), base.raw(), e, MPFR_RNDN);
    }
    return r;
}

inline Real max(const Real &a, const Real &b) { return a < b ? b : a; }
inline Real min(const Real &a, const Real &b) { return a < b ? a : b; }

inline Real const_pi()
{
    Real r;
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

// 2^e as a Real, e may be negative. Used for prune thresholds.
inline Real pow2(long e)
{
    Real r(1);
    mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
    return r;
}

} // namespace ramif
