#pragma once

// Dense complex linear algebra at working precision: Householder QR with
// column pivoting, least-squares solve, rank detection and nullspace
// extraction. Sizes here are a few hundred rows by a few dozen columns.

#include "ramif/complex.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace ramif {

class CMatrix
{
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return r_; }
    int cols() const { return c_; }
    Complex &at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Complex &at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

private:
    int r_ = 0, c_ = 0;
    std::vector<Complex> a_;
};

struct LsSolution {
    std::vector<Complex> x;
    Real residual_inf;                        // max |Ax - b| entry
    int rank = 0;
    std::vector<std::vector<Complex>> nullspace; // orthonormal-ish basis of ker A
};

// Least squares min |Ax - b| with column-pivoted Householder QR.
// rank_tol is relative to the largest diagonal of R.
inline LsSolution qr_least_squares(CMatrix A, std::vector<Complex> b, double rank_tol = 1e-24)
{
    const int m = A.rows(), n = A.cols();
    if (static_cast<int>(b.size()) != m) throw std::invalid_argument("qr: rhs size mismatch");
    CMatrix A0 = A;
    std::vector<Complex> b0 = b;

    std::vector<int> perm(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) perm[static_cast<size_t>(j)] = j;

    std::vector<Real> colnorm(static_cast<size_t>(n), Real(0));
    auto recompute_colnorm = [&](int j, int from_row) {
        Real s(0);
        for (int i = from_row; i < m; ++i) s += norm_sq(A.at(i, j));
        colnorm[static_cast<size_t>(j)] = s;
    };
    for (int j = 0; j < n; ++j) recompute_colnorm(j, 0);

    int kmax = std::min(m, n);
    Real r00(0);
    int rank = 0;
    std::vector<Real> diag_abs;

    for (int k = 0; k < kmax; ++k) {
        // pivot: column with largest remaining norm
        int piv = k;
        for (int j = k + 1; j < n; ++j) {
            if (colnorm[static_cast<size_t>(j)] > colnorm[static_cast<size_t>(piv)]) piv = j;
        }
        if (piv != k) {
            for (int i = 0; i < m; ++i) std::swap(A.at(i, k), A.at(i, piv));
            std::swap(colnorm[static_cast<size_t>(k)], colnorm[static_cast<size_t>(piv)]);
            std::swap(perm[static_cast<size_t>(k)], perm[static_cast<size_t>(piv)]);
        }

        // Householder vector for column k, rows k..m-1
        Real xnorm(0);
        for (int i = k; i < m; ++i) xnorm += norm_sq(A.at(i, k));
        xnorm = sqrt(xnorm);
        if (k == 0) r00 = xnorm;
        if (xnorm < r00 * Real(rank_tol) || xnorm.is_zero()) break;

        Complex x0 = A.at(k, k);
        Real x0abs = abs(x0);
        Complex phase = x0abs.is_zero() ? Complex(Real(1)) : x0 / x0abs;
        Complex alpha = -phase * xnorm; // R_kk after reflection
        // v = x - alpha e1, H = I - 2 v v^H / |v|^2
        std::vector<Complex> v(static_cast<size_t>(m - k));
        v[0] = x0 - alpha;
        for (int i = k + 1; i < m; ++i) v[static_cast<size_t>(i - k)] = A.at(i, k);
        Real vnorm(0);
        for (const auto &vi : v) vnorm += norm_sq(vi);
        if (!vnorm.is_zero()) {
            for (int j = k; j < n; ++j) {
                Complex dot; // v^H * col
                for (int i = k; i < m; ++i) dot += conj(v[static_cast<size_t>(i - k)]) * A.at(i, j);
                Complex f = dot * Real(2) / vnorm;
                for (int i = k; i < m; ++i) A.at(i, j) -= v[static_cast<size_t>(i - k)] * f;
            }
            Complex dotb;
            for (int i = k; i < m; ++i) dotb += conj(v[static_cast<size_t>(i - k)]) * b[static_cast<size_t>(i)];
            Complex fb = dotb * Real(2) / vnorm;
            for (int i = k; i < m; ++i) b[static_cast<size_t>(i)] -= v[static_cast<size_t>(i - k)] * fb;
        }
        A.at(k, k) = alpha;
        for (int i = k + 1; i < m; ++i) A.at(i, k) = Complex();
        diag_abs.push_back(abs(alpha));
        rank = k + 1;
        for (int j = k + 1; j < n; ++j) recompute_colnorm(j, k + 1);
    }

    // basic solution: back-substitute over the rank x rank leading block
    std::vector<Complex> xp(static_cast<size_t>(n));
    for (int i = rank - 1; i >= 0; --i) {
        Complex s = b[static_cast<size_t>(i)];
        for (int j = i + 1; j < rank; ++j) s -= A.at(i, j) * xp[static_cast<size_t>(j)];
        xp[static_cast<size_t>(i)] = s / A.at(i, i);
    }
    std::vector<Complex> x(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) x[static_cast<size_t>(perm[static_cast<size_t>(j)])] = xp[static_cast<size_t>(j)];

    LsSolution out;
    out.x = std::move(x);
    out.rank = rank;

    // nullspace: for each free column f (rank..n-1): R11 u = -R(:,f)
    for (int f = rank; f < n; ++f) {
        std::vector<Complex> u(static_cast<size_t>(n));
        std::vector<Complex> up(static_cast<size_t>(rank));
        for (int i = rank - 1; i >= 0; --i) {
            Complex s = -A.at(i, f);
            for (int j = i + 1; j < rank; ++j) s -= A.at(i, j) * up[static_cast<size_t>(j)];
            up[static_cast<size_t>(i)] = s / A.at(i, i);
        }
        for (int j = 0; j < rank; ++j) u[static_cast<size_t>(perm[static_cast<size_t>(j)])] = up[static_cast<size_t>(j)];
        u[static_cast<size_t>(perm[static_cast<size_t>(f)])] = Complex(Real(1));
        Real nrm(0);
        for (const auto &ui : u) nrm += norm_sq(ui);
        nrm = sqrt(nrm);
        for (auto &ui : u) ui /= nrm;
        out.nullspace.push_back(std::move(u));
    }

    // residual against the untouched system
    Real res(0);
    for (int i = 0; i < m; ++i) {
        Complex s = -b0[static_cast<size_t>(i)];
        for (int j = 0; j < n; ++j) s += A0.at(i, j) * out.x[static_cast<size_t>(j)];
        res = max(res, abs(s));
    }
    out.residual_inf = res;
    return out;
}

// Project x so chosen coordinates of the nullspace directions vanish:
// greedily pick, per nullspace vector, its largest-magnitude coordinate and
// cancel it. Deterministic canonical representative for rank-deficient solves.
inline void cancel_nullspace_components(std::vector<Complex> &x,
                                        const std::vector<std::vector<Complex>> &nullspace)
{
    for (const auto &nv : nullspace) {
        size_t piv = 0;
        Real best(0);
        for (size_t i = 0; i < nv.size(); ++i) {
            Real a = abs(nv[i]);
            if (a > best) {
                best = a;
                piv = i;
            }
        }
        if (best.is_zero()) continue;
        Complex kappa = x[piv] / nv[piv];
        for (size_t i = 0; i < x.size(); ++i) x[i] -= kappa * nv[i];
    }
}

} // namespace ramif
