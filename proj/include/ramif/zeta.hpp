#pragma once

// Riemann zeta at integer arguments >= 2 by Borwein's alternating-series
// acceleration. Error bound 3/(3+sqrt(8))^N against the eta series, so the
// term count follows directly from the working precision.

#include "ramif/mp.hpp"

#include <stdexcept>
#include <vector>

namespace ramif {

inline Real zeta_value(int n, long precision_bits = 0)
{
    if (n < 2) throw std::invalid_argument("zeta_value requires n >= 2");
    if (precision_bits == 0) precision_bits = mp::precision_bits();
    // (3+sqrt 8)^N ~ 5.828^N; 2.543 bits per term, plus slack
    int N = static_cast<int>(static_cast<double>(precision_bits) / 2.54) + 8;

    // d_k = N * sum_{i=0}^{k} (N+i-1)! 4^i / ((N-i)! (2i)!)
    std::vector<Real> d(static_cast<size_t>(N) + 1);
    Real term(N); // i = 0 contribution: N * (N-1)!/N! = 1, scaled below
    // build the summand iteratively: t_i = (N+i-1)! 4^i / ((N-i)! (2i)!)
    // t_0 = (N-1)!/N! = 1/N, so N * t_0 = 1
    Real t = Real(1) / Real(N);
    Real acc = t;
    std::vector<Real> partial(static_cast<size_t>(N) + 1);
    partial[0] = acc;
    for (int i = 1; i <= N; ++i) {
        // t_i / t_{i-1} = 4 (N+i-1)(N-i+1) / ((2i)(2i-1))
        t *= Real(4L * (N + i - 1) * (N - i + 1));
        t /= Real(static_cast<long>(2 * i) * static_cast<long>(2 * i - 1));
        acc += t;
        partial[static_cast<size_t>(i)] = acc;
    }
    for (int kk = 0; kk <= N; ++kk) d[static_cast<size_t>(kk)] = partial[static_cast<size_t>(kk)] * Real(N);

    // eta(n) ~ (-1/d_N) sum_{k=0}^{N-1} (-1)^k (d_k - d_N) / (k+1)^n
    Real s(0);
    for (int kk = 0; kk < N; ++kk) {
        Real term_k = (d[static_cast<size_t>(kk)] - d[static_cast<size_t>(N)]) /
                      pow_int(Real(kk + 1), n);
        if (kk % 2 == 0) {
            s -= term_k;
        } else {
            s += term_k;
        }
    }
    Real eta = s / d[static_cast<size_t>(N)];
    // zeta = eta / (1 - 2^(1-n))
    Real denom = Real(1) - pow2(1 - n);
    return eta / denom;
}

} // namespace ramif
