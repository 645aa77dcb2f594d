#pragma once

// The V_{2n} representation layer: homogeneous polynomials in X, Y with the
// single slash action, the (X-zY)^r (X-zbarY)^s basis, tensor products and
// the crossed-derivative projector delta^k with its closed form.
//
// Coefficient field is a template parameter: Gaussian rationals for the
// exact projector identities, working-precision complex for evaluated
// modular vectors. Mixing the two modes is a type error by construction.

#include "ramif/complex.hpp"
#include "ramif/rational.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ramif {

enum class PolyBasis { monomial, equivariant };

// Homogeneous degree-d polynomial; coefficient index = exponent of the first
// basis element (X, or X-zY), the second carries degree d - index.
template <class C>
class BiPoly
{
public:
    BiPoly() = default;
    BiPoly(int degree, PolyBasis basis)
        : deg_(degree), basis_(basis), c_(static_cast<size_t>(degree) + 1)
    {
        if (degree < 0) throw std::invalid_argument("negative polynomial degree");
    }

    int degree() const { return deg_; }
    PolyBasis basis() const { return basis_; }
    const C &operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    C &operator[](int i) { return c_[static_cast<size_t>(i)]; }

    BiPoly &operator+=(const BiPoly &o)
    {
        require_same(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    friend BiPoly operator+(BiPoly a, const BiPoly &b) { a += b; return a; }
    friend BiPoly operator-(BiPoly a, const BiPoly &b)
    {
        a.require_same(b);
        for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
        return a;
    }
    BiPoly scaled(const C &s) const
    {
        BiPoly out = *this;
        for (auto &v : out.c_) v *= s;
        return out;
    }

    // product of homogeneous polynomials in the same basis
    friend BiPoly operator*(const BiPoly &a, const BiPoly &b)
    {
        if (a.basis_ != b.basis_) throw std::invalid_argument("basis mismatch in product");
        BiPoly out(a.deg_ + b.deg_, a.basis_);
        for (int i = 0; i <= a.deg_; ++i) {
            for (int j = 0; j <= b.deg_; ++j) {
                out[i + j] += a[i] * b[j];
            }
        }
        return out;
    }

    bool is_zero() const
    {
        for (const auto &v : c_)
            if (!v.is_zero()) return false;
        return true;
    }

private:
    void require_same(const BiPoly &o) const
    {
        if (deg_ != o.deg_ || basis_ != o.basis_) {
            throw std::invalid_argument("degree/basis mismatch");
        }
    }

    int deg_ = 0;
    PolyBasis basis_ = PolyBasis::monomial;
    std::vector<C> c_;
};

// field embedding of exact rationals, specialized per coefficient type
template <class C>
C rational_to(const Rational &q);

template <>
inline RationalComplex rational_to<RationalComplex>(const Rational &q)
{
    return RationalComplex(q);
}

template <>
inline Complex rational_to<Complex>(const Rational &q)
{
    return Complex(q.to_real());
}

namespace detail {

template <class C>
std::vector<std::vector<C>> binomial_table(int n)
{
    std::vector<std::vector<C>> b(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        b[static_cast<size_t>(i)].resize(static_cast<size_t>(i) + 1);
        b[static_cast<size_t>(i)][0] = C(1);
        b[static_cast<size_t>(i)][static_cast<size_t>(i)] = C(1);
        for (int j = 1; j < i; ++j) {
            b[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                b[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] +
                b[static_cast<size_t>(i) - 1][static_cast<size_t>(j)];
        }
    }
    return b;
}

} // namespace detail

// slash action (X,Y) -> (aX+bY, cX+dY); monomial basis only
template <class C>
BiPoly<C> slash_poly(const BiPoly<C> &p, long a, long b, long c, long d)
{
    if (p.basis() != PolyBasis::monomial) {
        throw std::invalid_argument("slash_poly acts on the monomial basis");
    }
    int n = p.degree();
    BiPoly<C> out(n, PolyBasis::monomial);
    // (aX+bY)^i (cX+dY)^(n-i) expanded
    for (int i = 0; i <= n; ++i) {
        if (p[i].is_zero()) continue;
        // first factor powers
        std::vector<C> f1(static_cast<size_t>(i) + 1); // X-exponent k
        {
            auto bt = detail::binomial_table<C>(i);
            for (int k = 0; k <= i; ++k) {
                C t = bt[static_cast<size_t>(i)][static_cast<size_t>(k)];
                for (int e = 0; e < k; ++e) t *= C(a);
                for (int e = 0; e < i - k; ++e) t *= C(b);
                f1[static_cast<size_t>(k)] = t;
            }
        }
        int m = n - i;
        std::vector<C> f2(static_cast<size_t>(m) + 1);
        {
            auto bt = detail::binomial_table<C>(m);
            for (int k = 0; k <= m; ++k) {
                C t = bt[static_cast<size_t>(m)][static_cast<size_t>(k)];
                for (int e = 0; e < k; ++e) t *= C(c);
                for (int e = 0; e < m - k; ++e) t *= C(d);
                f2[static_cast<size_t>(k)] = t;
            }
        }
        for (int k1 = 0; k1 <= i; ++k1) {
            for (int k2 = 0; k2 <= m; ++k2) {
                out[k1 + k2] += p[i] * f1[static_cast<size_t>(k1)] * f2[static_cast<size_t>(k2)];
            }
        }
    }
    return out;
}

// change of basis: monomial X^a Y^b  ->  u^r v^s with u = X-zY, v = X-zbarY.
// Uses X = (zbar u - z v)/(zbar - z), Y = (u - v)/(zbar - z).
template <class C>
BiPoly<C> to_equivariant_basis(const BiPoly<C> &p, const C &z, const C &zbar)
{
    if (p.basis() != PolyBasis::monomial) throw std::invalid_argument("expected monomial basis");
    C dzb = zbar - z;
    if (dzb.is_zero()) throw std::invalid_argument("z on the real axis");
    int n = p.degree();
    BiPoly<C> out(n, PolyBasis::equivariant);
    auto bt = detail::binomial_table<C>(n);
    C inv = C(1) / dzb;
    for (int a = 0; a <= n; ++a) { // X^a Y^(n-a)
        if (p[a].is_zero()) continue;
        int b = n - a;
        // (zbar u - z v)^a (u - v)^b / dzb^n
        std::vector<C> acc(static_cast<size_t>(n) + 1); // u-exponent
        for (int k = 0; k <= a; ++k) {
            C t1 = bt[static_cast<size_t>(a)][static_cast<size_t>(k)];
            t1 *= pow_int(zbar, k);
            C zf = -z;
            t1 *= pow_int(zf, a - k);
            for (int l = 0; l <= b; ++l) {
                C t2 = bt[static_cast<size_t>(b)][static_cast<size_t>(l)];
                C mn = C(1);
                if ((b - l) % 2 != 0) mn = C(0) - C(1);
                acc[static_cast<size_t>(k + l)] += t1 * t2 * mn;
            }
        }
        C scale = p[a] * pow_int(inv, n);
        for (int r = 0; r <= n; ++r) out[r] += acc[static_cast<size_t>(r)] * scale;
    }
    return out;
}

// inverse: u^r v^s -> X^a Y^b by direct expansion of (X-zY)^r (X-zbarY)^s
template <class C>
BiPoly<C> from_equivariant_basis(const BiPoly<C> &p, const C &z, const C &zbar)
{
    if (p.basis() != PolyBasis::equivariant) throw std::invalid_argument("expected equivariant basis");
    int n = p.degree();
    BiPoly<C> out(n, PolyBasis::monomial);
    auto bt = detail::binomial_table<C>(n);
    for (int r = 0; r <= n; ++r) {
        if (p[r].is_zero()) continue;
        int s = n - r;
        // (X - zY)^r : X-exp k coefficient binom(r,k) (-z)^(r-k)
        for (int k1 = 0; k1 <= r; ++k1) {
            C t1 = bt[static_cast<size_t>(r)][static_cast<size_t>(k1)] * pow_int(C(0) - z, r - k1);
            for (int k2 = 0; k2 <= s; ++k2) {
                C t2 = bt[static_cast<size_t>(s)][static_cast<size_t>(k2)] *
                       pow_int(C(0) - zbar, s - k2);
                out[k1 + k2] += p[r] * t1 * t2;
            }
        }
    }
    return out;
}

// tensor of two homogeneous monomial-basis polynomials
template <class C>
class TensorBiPoly
{
public:
    TensorBiPoly(int deg1, int deg2)
        : d1_(deg1), d2_(deg2),
          c_(static_cast<size_t>(deg1 + 1) * static_cast<size_t>(deg2 + 1))
    {
        if (deg1 < 0 || deg2 < 0) throw std::invalid_argument("negative tensor degree");
    }
    static TensorBiPoly outer(const BiPoly<C> &a, const BiPoly<C> &b)
    {
        if (a.basis() != PolyBasis::monomial || b.basis() != PolyBasis::monomial) {
            throw std::invalid_argument("tensor factors must be monomial-basis");
        }
        TensorBiPoly t(a.degree(), b.degree());
        for (int i = 0; i <= a.degree(); ++i) {
            for (int j = 0; j <= b.degree(); ++j) {
                t.at(i, j) = a[i] * b[j];
            }
        }
        return t;
    }

    int deg1() const { return d1_; }
    int deg2() const { return d2_; }
    C &at(int i, int j) { return c_[static_cast<size_t>(i) * (d2_ + 1) + static_cast<size_t>(j)]; }
    const C &at(int i, int j) const
    {
        return c_[static_cast<size_t>(i) * (d2_ + 1) + static_cast<size_t>(j)];
    }

    // one application of dX (x) dY - dY (x) dX; degrees drop by one each
    TensorBiPoly crossed_derivative() const
    {
        if (d1_ == 0 || d2_ == 0) return TensorBiPoly(0, 0); // zero below anyway
        TensorBiPoly out(d1_ - 1, d2_ - 1);
        for (int i = 0; i <= d1_; ++i) {
            for (int j = 0; j <= d2_; ++j) {
                const C &v = at(i, j);
                if (v.is_zero()) continue;
                // dX on factor 1 (X-exp i -> i-1, factor i), dY on factor 2
                // (Y-exp d2-j, stays at X-exp j), valid when i>=1, j<=d2-1
                if (i >= 1 && j <= d2_ - 1) out.at(i - 1, j) += v * C(i) * C(d2_ - j);
                // minus dY (x) dX
                if (i <= d1_ - 1 && j >= 1) out.at(i, j - 1) -= v * C(d1_ - i) * C(j);
            }
        }
        return out;
    }

    BiPoly<C> multiply_factors() const
    {
        BiPoly<C> out(d1_ + d2_, PolyBasis::monomial);
        for (int i = 0; i <= d1_; ++i) {
            for (int j = 0; j <= d2_; ++j) {
                out[i + j] += at(i, j);
            }
        }
        return out;
    }

    // slash acting on both tensor slots
    TensorBiPoly slash_both(long a, long b, long c, long d) const
    {
        TensorBiPoly tmp(d1_, d2_);
        for (int i = 0; i <= d1_; ++i) {
            BiPoly<C> row(d2_, PolyBasis::monomial);
            for (int j = 0; j <= d2_; ++j) row[j] = at(i, j);
            BiPoly<C> srow = slash_poly(row, a, b, c, d);
            for (int j = 0; j <= d2_; ++j) tmp.at(i, j) = srow[j];
        }
        TensorBiPoly res(d1_, d2_);
        for (int j = 0; j <= d2_; ++j) {
            BiPoly<C> col(d1_, PolyBasis::monomial);
            for (int i = 0; i <= d1_; ++i) col[i] = tmp.at(i, j);
            BiPoly<C> scol = slash_poly(col, a, b, c, d);
            for (int i = 0; i <= d1_; ++i) res.at(i, j) = scol[i];
        }
        return res;
    }

private:
    int d1_ = 0, d2_ = 0;
    std::vector<C> c_;
};

// delta^k = m o (dX (x) dY - dY (x) dX)^k : V_{2a} (x) V_{2b} -> V_{2a+2b-2k};
// returns zero when k exceeds either factor degree
template <class C>
BiPoly<C> delta_projector(const TensorBiPoly<C> &t, int k)
{
    if (k < 0) throw std::invalid_argument("delta_projector needs k >= 0");
    if (k > t.deg1() || k > t.deg2()) {
        int d = t.deg1() + t.deg2() - 2 * k;
        return BiPoly<C>(d < 0 ? 0 : d, PolyBasis::monomial);
    }
    TensorBiPoly<C> cur = t;
    for (int i = 0; i < k; ++i) cur = cur.crossed_derivative();
    return cur.multiply_factors();
}

// Closed form for the equivariant components of
//   delta^k/(k!)^2 ( G (X-zY)^{2m} (x) D ),  D given by equivariant
// components D_{r,s}: F_{r,s} = (z-zbar)^k G binom(2m,k) binom(s+k,k)
// D_{r-2m+k, s+k}, zero outside range.
template <class C>
std::map<std::pair<int, int>, C> delta_closed_form(const C &G_coeff, int m,
                                                   const std::map<std::pair<int, int>, C> &D,
                                                   int k, const C &z_minus_zbar)
{
    std::map<std::pair<int, int>, C> out;
    int deg_D = -1;
    for (const auto &[rs, v] : D) {
        (void)v;
        deg_D = std::max(deg_D, rs.first + rs.second);
    }
    if (deg_D < 0) return out;
    int n2 = deg_D; // 2n
    if (k > 2 * m || k > n2) return out; // projector vanishes
    int total = 2 * m + n2 - 2 * k;
    C zk = pow_int(z_minus_zbar, k);
    for (int r = 0; r <= total; ++r) {
        int s = total - r;
        int dr = r - 2 * m + k, ds = s + k;
        auto it = D.find({dr, ds});
        if (it == D.end()) continue;
        C coeff = zk * G_coeff;
        // binom(2m, k) binom(s+k, k) in the coefficient field
        Rational b = binomial(2 * m, k) * binomial(s + k, k);
        coeff *= rational_to<C>(b);
        out[{r, s}] = coeff * it->second;
    }
    return out;
}

} // namespace ramif
