#pragma once

// Brute-force lattice summation: holomorphic Eisenstein q-series, the real
// analytic Eisenstein series E_{r,s} of Definition-style lattice sums, and
// the multi-banana modular graph functions C_{a_1..a_p}.
//
// Square-shell order: shells max(|m|,|n|) = t accumulate one at a time. The
// sharp-cutoff partial sums S_R approach the limit like a power series in
// 1/R, so shell checkpoints feed a Richardson fit S_R = S + sum_k c_k
// R^{-(w+k)}; the reported bound is the observed fit/extrapolation spread
// plus the analytic shell-integral tail of the raw sum, whichever applies.

#include "ramif/complex.hpp"
#include "ramif/linalg.hpp"
#include "ramif/qexpansion.hpp"
#include "ramif/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ramif {

struct HalfPlanePoint {
    Real x;
    Real y;
    long precision_bits;

    HalfPlanePoint(Real xx, Real yy)
        : x(std::move(xx)), y(std::move(yy)), precision_bits(mp::precision_bits())
    {
        if (!(y > Real(0))) throw std::invalid_argument("half-plane point needs y > 0");
    }
    HalfPlanePoint(double xx, double yy) : HalfPlanePoint(Real(xx), Real(yy)) {}
    explicit HalfPlanePoint(const Complex &z) : HalfPlanePoint(z.real(), z.imag()) {}

    Complex z() const { return Complex(x, y); }
    Complex zbar() const { return Complex(x, -y); }
    Real L() const { return Real(-2) * const_pi() * y; }
};

struct LatticeTruncation {
    int radius = 200;
    bool accelerate = true;
};

struct EvalWithBound {
    Complex value;
    Real bound;
};

inline unsigned long long divisor_sigma(int x, int n)
{
    unsigned long long s = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        unsigned long long p = 1;
        for (int e = 0; e < x; ++e) p *= static_cast<unsigned long long>(d);
        s += p;
    }
    return s;
}

// G_k = -B_k/(2k) + sum_{n>=1} sigma_{k-1}(n) q^n, weights (k, 0)
inline QExpansion holomorphic_G(int k, int q_order)
{
    if (k < 4 || k % 2 != 0) {
        throw std::invalid_argument("holomorphic_G needs even k >= 4, got " + std::to_string(k));
    }
    QExpansion g(WeightPair{k, 0}, q_order);
    g.set_coeff(0, 0, 0, Complex((-bernoulli(k) / Rational(2L * k)).to_real()));
    for (int n = 1; n <= q_order; ++n) {
        Real v;
        mpfr_set_ui(v.raw(), static_cast<unsigned long>(divisor_sigma(k - 1, n)), MPFR_RNDN);
        g.set_coeff(0, n, 0, Complex(v));
    }
    return g;
}

namespace detail {

// Fit S_R = S + sum_{k=0}^{K-1} c_k R^{-(w_lead+k)} over checkpoint radii and
// return the extrapolated S with a spread-based error estimate.
inline EvalWithBound richardson_extrapolate(const std::vector<int> &radii,
                                            const std::vector<Complex> &partials, int w_lead,
                                            const Real &raw_tail)
{
    const int npts = static_cast<int>(radii.size());
    auto fit = [&](int K) -> std::pair<Complex, Real> {
        CMatrix A(npts, K + 1);
        std::vector<Complex> b(static_cast<size_t>(npts));
        for (int i = 0; i < npts; ++i) {
            A.at(i, 0) = Complex(Real(1));
            Real rinv = Real(1) / Real(radii[static_cast<size_t>(i)]);
            for (int k = 1; k <= K; ++k) {
                A.at(i, k) = Complex(pow_int(rinv, w_lead + k - 1));
            }
            b[static_cast<size_t>(i)] = partials[static_cast<size_t>(i)];
        }
        auto sol = qr_least_squares(std::move(A), std::move(b), 1e-30);
        return {sol.x[0], sol.residual_inf};
    };
    int Kmax = std::min(6, npts - 2);
    if (Kmax < 1) return {partials.back(), raw_tail};
    auto [sk, rk] = fit(Kmax);
    auto [sk1, rk1] = fit(Kmax - 1);
    Real est = abs(sk - sk1) + rk + rk1;
    // never report below the precision floor of the accumulated magnitude
    Real floor_eps = abs(sk) * pow2(-(mp::precision_bits() - 24));
    return {sk, max(est, floor_eps)};
}

inline std::vector<int> checkpoint_radii(int R)
{
    // log-spaced down to ~R/3, deduplicated, increasing
    std::vector<int> out;
    double f = 1.0;
    for (int i = 0; i < 9; ++i) {
        int r = static_cast<int>(std::floor(R * f + 0.5));
        if (r >= 4 && (out.empty() || r != out.back())) out.push_back(r);
        f *= 0.875;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// lower bound factor mu with |mz+n| >= mu * max(|m|,|n|)
inline Real shell_floor(const HalfPlanePoint &z)
{
    Real denom = max(Real(1), z.x * z.x + z.y * z.y);
    return z.y / sqrt(denom);
}

} // namespace detail

// All components E_{r,s}, r+s = w, in one sweep; index by r.
inline std::vector<EvalWithBound> eval_Ers_family(int w, const HalfPlanePoint &z,
                                                  const LatticeTruncation &trunc = {})
{
    if (w < 1) throw std::invalid_argument("eval_Ers: total weight w >= 1 required (w=0 diverges)");
    std::vector<EvalWithBound> out(static_cast<size_t>(w) + 1);
    if (w % 2 != 0) {
        // shells cancel pairwise under (m,n) -> (-m,-n); the symmetric-order
        // sum is identically zero
        for (auto &e : out) e = {Complex(), Real(0)};
        return out;
    }

    const int R = trunc.radius;
    std::vector<int> marks = trunc.accelerate ? detail::checkpoint_radii(R) : std::vector<int>{R};
    std::vector<std::vector<Complex>> snapshots;

    std::vector<Complex> acc(static_cast<size_t>(w) + 1);
    Complex zc = z.z();
    size_t mark_idx = 0;

    for (int t = 1; t <= R; ++t) {
        auto point = [&](long m, long n) {
            Complex u(Real(n) + Real(m) * z.x, Real(m) * z.y);
            Real nu = norm_sq(u);
            Complex ratio = u * u / nu; // u / conj(u)
            Complex term = Complex(Real(1)) / (pow_int(u, w + 1) * conj(u));
            for (int r = w; r >= 0; --r) {
                acc[static_cast<size_t>(r)] += term;
                if (r > 0) term *= ratio;
            }
        };
        // half shell: (m=t, n in [-t,t]), (1<=m<t, n=+-t), (m=0, n=t)
        for (long n = -t; n <= t; ++n) point(t, n);
        for (long m = 1; m < t; ++m) {
            point(m, t);
            point(m, -t);
        }
        point(0, t);
        if (mark_idx < marks.size() && t == marks[mark_idx]) {
            snapshots.push_back(acc);
            ++mark_idx;
        }
    }
    (void)zc;

    // prefactor w!/(2 (2 pi i)^(w+2)) times L; the half-lattice doubles
    Real pref = factorial(w).to_real() / (Real(2) * pow_int(Real(2) * const_pi(), w + 2));
    if (((w + 2) / 2) % 2 != 0) pref = -pref;
    Real scale = pref * z.L() * Real(2);

    Real mu = detail::shell_floor(z);
    Real raw_tail = abs(scale) * Real(8) * pow_int(mu, -(w + 2)) * pow_int(Real(R), -w) / Real(w);

    for (int r = 0; r <= w; ++r) {
        if (!trunc.accelerate) {
            out[static_cast<size_t>(r)] = {acc[static_cast<size_t>(r)] * scale, raw_tail};
            continue;
        }
        std::vector<Complex> partials;
        partials.reserve(snapshots.size());
        for (const auto &snap : snapshots) partials.push_back(snap[static_cast<size_t>(r)] * scale);
        out[static_cast<size_t>(r)] =
            detail::richardson_extrapolate(marks, partials, w, raw_tail);
    }
    return out;
}

inline EvalWithBound eval_Ers(int r, int s, const HalfPlanePoint &z,
                              const LatticeTruncation &trunc = {})
{
    if (r < 0 || s < 0) throw std::invalid_argument("eval_Ers: r, s >= 0 required");
    return eval_Ers_family(r + s, z, trunc)[static_cast<size_t>(r)];
}

// ---------------------------------------------------------------------------
// modular graph functions C_{a_1,...,a_p}
// ---------------------------------------------------------------------------

namespace detail {

// p = 2 in full precision: single-pair positive sum, Richardson accelerated
inline EvalWithBound mgf_two(int a1, int a2, const HalfPlanePoint &z, const LatticeTruncation &trunc)
{
    const int a = a1 + a2;
    const int R = trunc.radius;
    std::vector<int> marks = trunc.accelerate ? checkpoint_radii(R) : std::vector<int>{R};
    std::vector<Real> snapshots;
    Real acc(0);
    size_t mark_idx = 0;
    for (int t = 1; t <= R; ++t) {
        auto point = [&](long m, long n) {
            Real re = Real(n) + Real(m) * z.x;
            Real im = Real(m) * z.y;
            acc += pow_int(re * re + im * im, -a);
        };
        for (long n = -t; n <= t; ++n) point(t, n);
        for (long m = 1; m < t; ++m) {
            point(m, t);
            point(m, -t);
        }
        point(0, t);
        if (mark_idx < marks.size() && t == marks[mark_idx]) {
            snapshots.push_back(acc);
            ++mark_idx;
        }
    }
    Real scale = pow_int(z.y / const_pi(), a) * Real(2);
    Real raw_tail = scale * Real(8) * pow_int(shell_floor(z), -2 * a) * pow_int(Real(R), -(2 * a - 2)) /
                    Real(2 * a - 2) / Real(2);
    if (!trunc.accelerate) return {Complex(acc * scale), raw_tail};
    std::vector<Complex> cp;
    cp.reserve(snapshots.size());
    for (const auto &sv : snapshots) cp.push_back(Complex(sv * scale));
    return richardson_extrapolate(marks, cp, 2 * a - 2, raw_tail);
}

// gridded factor f_a(m,n) = (y / (pi |mz+n|^2))^a in double, f(0,0) = 0 so
// excluded configurations drop out of the convolutions automatically
inline std::vector<double> mgf_grid(int a, double x, double y, int R)
{
    const int W = 2 * R + 1;
    std::vector<double> f(static_cast<size_t>(W) * W);
    const double ypi = y / 3.14159265358979323846264338327950288;
    for (int m = -R; m <= R; ++m) {
        for (int n = -R; n <= R; ++n) {
            double re = m * x + n;
            double im = m * y;
            double d = re * re + im * im;
            double v = 0.0;
            if (d > 0) v = std::pow(ypi / d, a);
            f[static_cast<size_t>(m + R) * W + static_cast<size_t>(n + R)] = v;
        }
    }
    return f;
}

inline double mgf_three_at(int a1, int a2, int a3, double x, double y, int R)
{
    const int W = 2 * R + 1;
    auto f1 = mgf_grid(a1, x, y, R);
    auto f2 = mgf_grid(a2, x, y, R);
    auto f3 = mgf_grid(a3, x, y, R);
    double total = 0.0, comp = 0.0; // Kahan over s
    for (int sm = -R; sm <= R; ++sm) {
        for (int sn = -R; sn <= R; ++sn) {
            double w3 = f3[static_cast<size_t>(-sm + R) * W + static_cast<size_t>(-sn + R)];
            if (w3 == 0.0) continue;
            double inner = 0.0;
            int mlo = std::max(-R, sm - R), mhi = std::min(R, sm + R);
            int nlo = std::max(-R, sn - R), nhi = std::min(R, sn + R);
            for (int um = mlo; um <= mhi; ++um) {
                const double *row1 = &f1[static_cast<size_t>(um + R) * W];
                const double *row2 = &f2[static_cast<size_t>(sm - um + R) * W];
                for (int un = nlo; un <= nhi; ++un) {
                    inner += row1[un + R] * row2[sn - un + R];
                }
            }
            double term = w3 * inner;
            double yk = term - comp;
            double tt = total + yk;
            comp = (tt - total) - yk;
            total = tt;
        }
    }
    return total;
}

inline double mgf_four_at(int a1, int a2, int a3, int a4, double x, double y, int R)
{
    const int W = 2 * R + 1;
    const int SW = 4 * R + 1;
    auto conv_pair = [&](int aa, int ab) {
        auto fa = mgf_grid(aa, x, y, R);
        auto fb = mgf_grid(ab, x, y, R);
        std::vector<double> g(static_cast<size_t>(SW) * SW, 0.0);
        for (int sm = -2 * R; sm <= 2 * R; ++sm) {
            int mlo = std::max(-R, sm - R), mhi = std::min(R, sm + R);
            for (int sn = -2 * R; sn <= 2 * R; ++sn) {
                int nlo = std::max(-R, sn - R), nhi = std::min(R, sn + R);
                double inner = 0.0;
                for (int um = mlo; um <= mhi; ++um) {
                    const double *rowa = &fa[static_cast<size_t>(um + R) * W];
                    const double *rowb = &fb[static_cast<size_t>(sm - um + R) * W];
                    for (int un = nlo; un <= nhi; ++un) {
                        inner += rowa[un + R] * rowb[sn - un + R];
                    }
                }
                g[static_cast<size_t>(sm + 2 * R) * SW + static_cast<size_t>(sn + 2 * R)] = inner;
            }
        }
        return g;
    };
    auto g12 = conv_pair(a1, a2);
    auto g34 = conv_pair(a3, a4);
    double total = 0.0, comp = 0.0;
    for (int sm = -2 * R; sm <= 2 * R; ++sm) {
        for (int sn = -2 * R; sn <= 2 * R; ++sn) {
            double term = g12[static_cast<size_t>(sm + 2 * R) * SW + static_cast<size_t>(sn + 2 * R)] *
                          g34[static_cast<size_t>(-sm + 2 * R) * SW + static_cast<size_t>(-sn + 2 * R)];
            double yk = term - comp;
            double tt = total + yk;
            comp = (tt - total) - yk;
            total = tt;
        }
    }
    return total;
}

} // namespace detail

inline EvalWithBound eval_mgf(const std::vector<int> &indices, const HalfPlanePoint &z,
                              const LatticeTruncation &trunc = {})
{
    const int p = static_cast<int>(indices.size());
    if (p < 2 || p > 4) throw std::invalid_argument("eval_mgf: 2 <= p <= 4 supported");
    int total_weight = 0;
    for (int a : indices) {
        if (a < 1) throw std::invalid_argument("eval_mgf: indices must be >= 1");
        total_weight += a;
    }
    if (total_weight < p) throw std::invalid_argument("eval_mgf: divergent weight");

    if (p == 2) return detail::mgf_two(indices[0], indices[1], z, trunc);

    double x = z.x.to_double();
    double y = z.y.to_double();
    int R = trunc.radius;
    double vR, vH;
    if (p == 3) {
        vR = detail::mgf_three_at(indices[0], indices[1], indices[2], x, y, R);
        vH = detail::mgf_three_at(indices[0], indices[1], indices[2], x, y, R / 2);
    } else {
        vR = detail::mgf_four_at(indices[0], indices[1], indices[2], indices[3], x, y, R);
        vH = detail::mgf_four_at(indices[0], indices[1], indices[2], indices[3], x, y, R / 2);
    }
    // power-law decay with exponent >= 1, so the R/2 -> R movement bounds
    // what is left beyond R (up to the asymptotic regime caveat)
    double bound = std::abs(vR - vH) + 1e-12 * std::abs(vR);
    return {Complex(Real(vR)), Real(bound)};
}

} // namespace ramif
