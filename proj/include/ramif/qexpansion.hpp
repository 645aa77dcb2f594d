#pragma once

// Truncated bigraded Fourier expansions
//
//   f = sum_j y^j sum_{0<=m,n<=N} a^{(j)}_{m,n} q^m qbar^n,
//   q = e^{2 pi i z}, qbar = e^{-2 pi i zbar},
//
// carrying a weight pair (r,s), together with the weight-shifting operator
// calculus acting on them. Values are immutable in spirit: every operation
// returns a fresh expansion.

#include "ramif/complex.hpp"
#include "ramif/mp.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ramif {

struct WeightPair {
    int r = 0;
    int s = 0;
    friend bool operator==(const WeightPair &a, const WeightPair &b)
    {
        return a.r == b.r && a.s == b.s;
    }
    friend bool operator!=(const WeightPair &a, const WeightPair &b) { return !(a == b); }
    std::string str() const { return "(" + std::to_string(r) + "," + std::to_string(s) + ")"; }
};

struct EvalResult {
    Complex value;
    Real tail; // estimated magnitude of the dropped q/qbar tail
};

class QExpansion
{
public:
    using Mode = std::pair<int, int>; // (m, n)

    // Laurent polynomial in y for one Fourier mode
    struct Laurent {
        int jmin = 0;
        std::vector<Complex> a; // a[t] multiplies y^(jmin+t)
    };

    QExpansion() = default;
    QExpansion(WeightPair w, int q_order)
        : weights_(w), q_order_(q_order), precision_bits_(mp::precision_bits())
    {
        if (q_order < 0) throw std::invalid_argument("q_order must be >= 0");
    }

    static QExpansion zero(WeightPair w, int q_order) { return QExpansion(w, q_order); }

    // coeff * y^j q^m qbar^n
    static QExpansion monomial(WeightPair w, int q_order, int j, int m, int n, Complex coeff)
    {
        QExpansion e(w, q_order);
        e.set_coeff(j, m, n, std::move(coeff));
        return e;
    }

    const WeightPair &weights() const { return weights_; }
    int q_order() const { return q_order_; }
    long precision_bits() const { return precision_bits_; }
    const std::map<Mode, Laurent> &modes() const { return modes_; }
    bool empty() const { return modes_.empty(); }

    std::pair<int, int> y_range() const
    {
        if (modes_.empty()) return {0, 0};
        int lo = 1 << 30, hi = -(1 << 30);
        for (const auto &[mode, lau] : modes_) {
            lo = std::min(lo, lau.jmin);
            hi = std::max(hi, lau.jmin + static_cast<int>(lau.a.size()) - 1);
        }
        return {lo, hi};
    }

    void set_coeff(int j, int m, int n, Complex c)
    {
        check_mode(m, n);
        Laurent &lau = modes_[{m, n}];
        if (lau.a.empty()) {
            lau.jmin = j;
            lau.a.push_back(std::move(c));
            return;
        }
        int jmax = lau.jmin + static_cast<int>(lau.a.size()) - 1;
        if (j < lau.jmin) {
            lau.a.insert(lau.a.begin(), static_cast<size_t>(lau.jmin - j), Complex());
            lau.jmin = j;
        } else if (j > jmax) {
            lau.a.resize(lau.a.size() + static_cast<size_t>(j - jmax));
        }
        lau.a[static_cast<size_t>(j - lau.jmin)] = std::move(c);
    }

    void add_coeff(int j, int m, int n, const Complex &c)
    {
        Complex cur = coeff(j, m, n);
        set_coeff(j, m, n, cur + c);
    }

    Complex coeff(int j, int m, int n) const
    {
        auto it = modes_.find({m, n});
        if (it == modes_.end()) return Complex();
        const Laurent &lau = it->second;
        int t = j - lau.jmin;
        if (t < 0 || t >= static_cast<int>(lau.a.size())) return Complex();
        return lau.a[static_cast<size_t>(t)];
    }

    // --- ring operations ------------------------------------------------

    friend QExpansion operator+(const QExpansion &x, const QExpansion &y)
    {
        if (x.weights_ != y.weights_) {
            throw std::invalid_argument("weight mismatch in addition: " + x.weights_.str() +
                                        " vs " + y.weights_.str());
        }
        QExpansion out(x.weights_, std::min(x.q_order_, y.q_order_));
        for (const auto &[mode, lau] : x.modes_) {
            if (mode.first > out.q_order_ || mode.second > out.q_order_) continue;
            out.modes_[mode] = lau;
        }
        for (const auto &[mode, lau] : y.modes_) {
            if (mode.first > out.q_order_ || mode.second > out.q_order_) continue;
            Laurent &dst = out.modes_[mode];
            if (dst.a.empty()) {
                dst = lau;
            } else {
                for (size_t t = 0; t < lau.a.size(); ++t) {
                    int j = lau.jmin + static_cast<int>(t);
                    Complex cur;
                    int off = j - dst.jmin;
                    if (off >= 0 && off < static_cast<int>(dst.a.size()))
                        cur = dst.a[static_cast<size_t>(off)];
                    // route through set on the out object for window growth
                    out.set_coeff(j, mode.first, mode.second, cur + lau.a[t]);
                }
            }
        }
        out.prune();
        return out;
    }

    friend QExpansion operator-(const QExpansion &x, const QExpansion &y)
    {
        return x + y.scaled(Complex(Real(-1)));
    }

    QExpansion scaled(const Complex &c) const
    {
        QExpansion out(weights_, q_order_);
        if (c.is_zero()) return out;
        out.modes_ = modes_;
        for (auto &[mode, lau] : out.modes_) {
            (void)mode;
            for (auto &v : lau.a) v *= c;
        }
        out.prune();
        return out;
    }
    QExpansion scaled(const Real &c) const { return scaled(Complex(c)); }
    QExpansion scaled(long c) const { return scaled(Complex(Real(c))); }

    friend QExpansion operator*(const QExpansion &x, const QExpansion &y)
    {
        QExpansion out(WeightPair{x.weights_.r + y.weights_.r, x.weights_.s + y.weights_.s},
                       std::min(x.q_order_, y.q_order_));
        for (const auto &[ma, la] : x.modes_) {
            if (ma.first > out.q_order_ || ma.second > out.q_order_) continue;
            for (const auto &[mb, lb] : y.modes_) {
                int m = ma.first + mb.first;
                int n = ma.second + mb.second;
                if (m > out.q_order_ || n > out.q_order_) continue;
                Laurent &dst = out.modes_[{m, n}];
                int cjmin = la.jmin + lb.jmin;
                int clen = static_cast<int>(la.a.size() + lb.a.size()) - 1;
                if (dst.a.empty()) {
                    dst.jmin = cjmin;
                    dst.a.resize(static_cast<size_t>(clen));
                } else {
                    int need_lo = std::min(dst.jmin, cjmin);
                    int need_hi = std::max(dst.jmin + static_cast<int>(dst.a.size()) - 1,
                                           cjmin + clen - 1);
                    if (need_lo < dst.jmin) {
                        dst.a.insert(dst.a.begin(), static_cast<size_t>(dst.jmin - need_lo),
                                     Complex());
                        dst.jmin = need_lo;
                    }
                    if (need_hi >= dst.jmin + static_cast<int>(dst.a.size())) {
                        dst.a.resize(static_cast<size_t>(need_hi - dst.jmin + 1));
                    }
                }
                for (size_t ta = 0; ta < la.a.size(); ++ta) {
                    if (la.a[ta].is_zero()) continue;
                    for (size_t tb = 0; tb < lb.a.size(); ++tb) {
                        if (lb.a[tb].is_zero()) continue;
                        int j = la.jmin + static_cast<int>(ta) + lb.jmin + static_cast<int>(tb);
                        dst.a[static_cast<size_t>(j - dst.jmin)] += la.a[ta] * lb.a[tb];
                    }
                }
            }
        }
        out.prune();
        return out;
    }

    // multiply by L^k where L = -2 pi y, modular of weights (-1,-1)
    QExpansion mul_L(int k) const
    {
        QExpansion out(WeightPair{weights_.r - k, weights_.s - k}, q_order_);
        Real scale = pow_int(Real(-2) * const_pi(), k);
        out.modes_ = modes_;
        for (auto &[mode, lau] : out.modes_) {
            (void)mode;
            lau.jmin += k;
            for (auto &v : lau.a) v *= scale;
        }
        return out;
    }

    // del_r = 2iy d/dz + r : weights (r,s) -> (r+1, s-1)
    // basis action: y^j q^m qbar^n -> -4 pi m y^(j+1) ... + (j+r) y^j ...
    QExpansion partial() const
    {
        QExpansion out(WeightPair{weights_.r + 1, weights_.s - 1}, q_order_);
        Real four_pi = Real(4) * const_pi();
        for (const auto &[mode, lau] : modes_) {
            Laurent dst;
            dst.jmin = lau.jmin;
            dst.a.resize(lau.a.size() + 1);
            Real mfac = -four_pi * Real(mode.first);
            for (size_t t = 0; t < lau.a.size(); ++t) {
                int j = lau.jmin + static_cast<int>(t);
                dst.a[t] += lau.a[t] * Real(j + weights_.r);
                if (mode.first != 0) dst.a[t + 1] += lau.a[t] * mfac;
            }
            if (!all_zero(dst)) out.modes_[mode] = std::move(dst);
        }
        out.prune();
        return out;
    }

    // delbar_s = -2iy d/dzbar + s : weights (r,s) -> (r-1, s+1)
    QExpansion partial_bar() const
    {
        QExpansion out(WeightPair{weights_.r - 1, weights_.s + 1}, q_order_);
        Real four_pi = Real(4) * const_pi();
        for (const auto &[mode, lau] : modes_) {
            Laurent dst;
            dst.jmin = lau.jmin;
            dst.a.resize(lau.a.size() + 1);
            Real nfac = -four_pi * Real(mode.second);
            for (size_t t = 0; t < lau.a.size(); ++t) {
                int j = lau.jmin + static_cast<int>(t);
                dst.a[t] += lau.a[t] * Real(j + weights_.s);
                if (mode.second != 0) dst.a[t + 1] += lau.a[t] * nfac;
            }
            if (!all_zero(dst)) out.modes_[mode] = std::move(dst);
        }
        out.prune();
        return out;
    }

    // Delta_{r,s} = -delbar_{s-1} del_r + r(s-1); weights preserved
    QExpansion laplacian() const
    {
        QExpansion t = partial().partial_bar().scaled(-1L);
        long rs = static_cast<long>(weights_.r) * (weights_.s - 1);
        if (rs != 0) t = t + scaled(rs);
        return t;
    }

    // coefficient conjugation: swaps (m,n) and the weights
    QExpansion conjugate() const
    {
        QExpansion out(WeightPair{weights_.s, weights_.r}, q_order_);
        for (const auto &[mode, lau] : modes_) {
            Laurent dst = lau;
            for (auto &v : dst.a) v = conj(v);
            out.modes_[{mode.second, mode.first}] = std::move(dst);
        }
        return out;
    }

    EvalResult evaluate(const Complex &z) const
    {
        if (!(z.imag() > Real(0))) throw std::invalid_argument("evaluate: z not in upper half plane");
        Real y = z.imag();
        Real two_pi = Real(2) * const_pi();
        // q^m and qbar^n powers
        Complex q1 = exp(i_unit() * two_pi * z);
        Complex qb1 = conj(exp(i_unit() * two_pi * conj(z))); // e^{-2 pi i zbar}
        std::vector<Complex> qp(static_cast<size_t>(q_order_) + 1), qbp(qp.size());
        qp[0] = Complex(Real(1));
        qbp[0] = Complex(Real(1));
        for (int m = 1; m <= q_order_; ++m) qp[static_cast<size_t>(m)] = qp[static_cast<size_t>(m - 1)] * q1;
        for (int n = 1; n <= q_order_; ++n) qbp[static_cast<size_t>(n)] = qbp[static_cast<size_t>(n - 1)] * qb1;

        Complex total;
        std::vector<Real> shell_abs(static_cast<size_t>(2 * q_order_) + 1, Real(0));
        for (const auto &[mode, lau] : modes_) {
            // Horner in y from the top exponent down, then y^jmin
            Complex p;
            for (size_t t = lau.a.size(); t-- > 0;) {
                p = p * y + lau.a[t];
            }
            p *= pow_int(y, lau.jmin);
            shell_abs[static_cast<size_t>(mode.first + mode.second)] += abs(p);
            total += p * qp[static_cast<size_t>(mode.first)] * qbp[static_cast<size_t>(mode.second)];
        }
        return {total, tail_estimate(shell_abs, y)};
    }

    // absolute prune (coefficients below threshold are absent)
    void prune(Real threshold = Real(0))
    {
        if (threshold.is_zero()) threshold = pow2(-(precision_bits_ - 16));
        for (auto it = modes_.begin(); it != modes_.end();) {
            Laurent &lau = it->second;
            for (auto &v : lau.a) {
                if (abs(v.real()) < threshold) v.real() = Real(0);
                if (abs(v.imag()) < threshold) v.imag() = Real(0);
            }
            // trim zero edges
            size_t lead = 0;
            while (lead < lau.a.size() && lau.a[lead].is_zero()) ++lead;
            if (lead == lau.a.size()) {
                it = modes_.erase(it);
                continue;
            }
            size_t tail = lau.a.size();
            while (tail > lead && lau.a[tail - 1].is_zero()) --tail;
            if (lead > 0 || tail < lau.a.size()) {
                std::vector<Complex> na(lau.a.begin() + static_cast<long>(lead),
                                        lau.a.begin() + static_cast<long>(tail));
                lau.jmin += static_cast<int>(lead);
                lau.a = std::move(na);
            }
            ++it;
        }
    }

    Real max_abs_coeff() const
    {
        Real m(0);
        for (const auto &[mode, lau] : modes_) {
            (void)mode;
            for (const auto &v : lau.a) m = max(m, max(abs(v.real()), abs(v.imag())));
        }
        return m;
    }

    bool is_zero(const Real &tol) const { return max_abs_coeff() < tol; }

private:
    void check_mode(int m, int n) const
    {
        if (m < 0 || n < 0 || m > q_order_ || n > q_order_) {
            throw std::invalid_argument("mode (" + std::to_string(m) + "," + std::to_string(n) +
                                        ") outside truncation order " + std::to_string(q_order_));
        }
    }

    static bool all_zero(const Laurent &lau)
    {
        for (const auto &v : lau.a)
            if (!v.is_zero()) return false;
        return true;
    }

    // Geometric estimate for the dropped shells m+n > N, using the decay of
    // the stored shells at this y. An estimate, not a proven bound; callers
    // treat it as the evaluation uncertainty.
    Real tail_estimate(const std::vector<Real> &shell_abs, const Real &y) const
    {
        Real rho = exp(Real(-2) * const_pi() * y);
        int k1 = -1, k0 = -1;
        for (int k = static_cast<int>(shell_abs.size()) - 1; k >= 0; --k) {
            if (!shell_abs[static_cast<size_t>(k)].is_zero()) {
                if (k1 < 0) {
                    k1 = k;
                } else {
                    k0 = k;
                    break;
                }
            }
        }
        if (k1 < 0) return Real(0);
        Real growth(1);
        if (k0 >= 0 && shell_abs[static_cast<size_t>(k1)] > shell_abs[static_cast<size_t>(k0)]) {
            Real g = shell_abs[static_cast<size_t>(k1)] / shell_abs[static_cast<size_t>(k0)];
            // per-shell growth factor
            growth = exp(log(g) / Real(k1 - k0));
        }
        Real ratio = growth * rho;
        if (!(ratio < Real(0.5))) {
            // decay too slow to trust the estimate; report a huge tail
            return shell_abs[static_cast<size_t>(k1)] * Real(1e30);
        }
        int gap = q_order_ + 1 - k1;
        return shell_abs[static_cast<size_t>(k1)] * pow_int(growth, gap) * pow_int(rho, q_order_ + 1) /
               (Real(1) - ratio);
    }

    WeightPair weights_{};
    int q_order_ = 0;
    std::map<Mode, Laurent> modes_;
    long precision_bits_ = 128;
};

// max |a - b| over the union of stored coefficients
inline Real coeff_distance(const QExpansion &a, const QExpansion &b)
{
    Real m(0);
    auto scan = [&](const QExpansion &x, const QExpansion &y) {
        for (const auto &[mode, lau] : x.modes()) {
            for (size_t t = 0; t < lau.a.size(); ++t) {
                int j = lau.jmin + static_cast<int>(t);
                Complex d = lau.a[t] - y.coeff(j, mode.first, mode.second);
                m = max(m, abs(d));
            }
        }
    };
    scan(a, b);
    scan(b, a);
    return m;
}

// relative version: distance / max(1, |a|, |b|)
inline Real coeff_distance_rel(const QExpansion &a, const QExpansion &b)
{
    Real scale = max(Real(1), max(a.max_abs_coeff(), b.max_abs_coeff()));
    return coeff_distance(a, b) / scale;
}

} // namespace ramif
