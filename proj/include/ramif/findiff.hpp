#pragma once

// Black-box differential and modular checks on functions of z: central
// finite differences for d/dz, d/dzbar, the weighted Laplacian, slash-action
// residuals, and exterior-derivative residuals for one-forms.

#include "ramif/complex.hpp"
#include "ramif/lattice.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace ramif {

struct StencilConfig {
    Real h;        // real step; if zero, use 1e-3 * y at the evaluation point
    int order = 4; // 2 or 4

    StencilConfig() : h(Real(0)) {}
    StencilConfig(Real step, int ord) : h(std::move(step)), order(ord)
    {
        if (order != 2 && order != 4) throw std::invalid_argument("stencil order must be 2 or 4");
    }

    Real step_at(const Complex &z) const
    {
        if (!h.is_zero()) return h;
        return Real(1e-3) * z.imag();
    }
};

struct ModularMatrix {
    long a = 1, b = 0, c = 0, d = 1;

    ModularMatrix() = default;
    ModularMatrix(long aa, long bb, long cc, long dd) : a(aa), b(bb), c(cc), d(dd)
    {
        if (a * d - b * c != 1) throw std::invalid_argument("matrix must have determinant 1");
    }
    static ModularMatrix S() { return {0, -1, 1, 0}; }
    static ModularMatrix T() { return {1, 1, 0, 1}; }
    friend ModularMatrix operator*(const ModularMatrix &x, const ModularMatrix &y)
    {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d};
    }
    Complex apply(const Complex &z) const
    {
        return (z * Real(a) + Real(b)) / (z * Real(c) + Real(d));
    }
};

// the 5 generic sample points used throughout the checks (away from i, rho)
inline std::vector<Complex> sample_points()
{
    return {Complex(Real(0.3), Real(1.1)), Complex(Real(-0.42), Real(0.9)),
            Complex(Real(0.05), Real(2.0)), Complex(Real(0.51), Real(0.87)),
            Complex(Real(0.0), Real(1.7))};
}

using ZFunction = std::function<Complex(const Complex &)>;

namespace detail {

struct FirstDerivs {
    Complex fx, fy;
};

inline FirstDerivs fd_first(const ZFunction &f, const Complex &z, const StencilConfig &cfg)
{
    Real h = cfg.step_at(z);
    if (!(z.imag() - h * Real(2) > Real(0))) {
        throw std::invalid_argument("stencil exits the upper half plane");
    }
    Complex ih = i_unit() * h;
    FirstDerivs d;
    if (cfg.order == 2) {
        d.fx = (f(z + h) - f(z - h)) / (h * Real(2));
        d.fy = (f(z + ih) - f(z - ih)) / (h * Real(2));
    } else {
        Complex h2 = Complex(h * Real(2));
        d.fx = (f(z - h2) - f(z + h2) + (f(z + h) - f(z - h)) * Real(8)) / (h * Real(12));
        Complex ih2 = ih * Real(2);
        d.fy = (f(z - ih2) - f(z + ih2) + (f(z + ih) - f(z - ih)) * Real(8)) / (h * Real(12));
    }
    return d;
}

} // namespace detail

inline Complex fd_dz(const ZFunction &f, const Complex &z, const StencilConfig &cfg = {})
{
    auto d = detail::fd_first(f, z, cfg);
    return (d.fx - i_unit() * d.fy) * Real(0.5);
}

inline Complex fd_dzbar(const ZFunction &f, const Complex &z, const StencilConfig &cfg = {})
{
    auto d = detail::fd_first(f, z, cfg);
    return (d.fx + i_unit() * d.fy) * Real(0.5);
}

// Delta_{r,s} f via the expanded composition
//   -delbar_{s-1} del_r + r(s-1)  =  -4y^2 d2/dzdzbar - 2iys d/dz + 2iyr d/dzbar
// with d2/dzdzbar = (f_xx + f_yy)/4 on one cross stencil.
inline Complex fd_laplacian(const ZFunction &f, WeightPair w, const Complex &z,
                            const StencilConfig &cfg = {})
{
    Real h = cfg.step_at(z);
    if (!(z.imag() - h * Real(2) > Real(0))) {
        throw std::invalid_argument("stencil exits the upper half plane");
    }
    Complex ih = i_unit() * h;
    Complex f0 = f(z);
    Complex fxp = f(z + h), fxm = f(z - h);
    Complex fyp = f(z + ih), fym = f(z - ih);
    Complex fxx, fyy, fx, fy;
    if (cfg.order == 2) {
        fxx = (fxp + fxm - f0 * Real(2)) / (h * h);
        fyy = (fyp + fym - f0 * Real(2)) / (h * h);
        fx = (fxp - fxm) / (h * Real(2));
        fy = (fyp - fym) / (h * Real(2));
    } else {
        Complex fxp2 = f(z + Complex(h * Real(2))), fxm2 = f(z - Complex(h * Real(2)));
        Complex fyp2 = f(z + ih * Real(2)), fym2 = f(z - ih * Real(2));
        Real h12 = h * Real(12);
        fxx = ((fxp + fxm) * Real(16) - fxp2 - fxm2 - f0 * Real(30)) / (h12 * h);
        fyy = ((fyp + fym) * Real(16) - fyp2 - fym2 - f0 * Real(30)) / (h12 * h);
        fx = (fxm2 - fxp2 + (fxp - fxm) * Real(8)) / h12;
        fy = (fym2 - fyp2 + (fyp - fym) * Real(8)) / h12;
    }
    Complex fz = (fx - i_unit() * fy) * Real(0.5);
    Complex fzb = (fx + i_unit() * fy) * Real(0.5);
    Complex fzzb = (fxx + fyy) * Real(0.25);
    Real y = z.imag();
    Complex out = -fzzb * (y * y * Real(4));
    out += i_unit() * y * Real(2) * (fzb * Real(w.r) - fz * Real(w.s));
    return out;
}

// max over points of |(cz+d)^-r (czbar+d)^-s f(gamma z) - f(z)|
inline Real modularity_residual(const ZFunction &f, WeightPair w, const ModularMatrix &gamma,
                                const std::vector<Complex> &points)
{
    Real worst(0);
    for (const auto &z : points) {
        Complex cd = z * Real(gamma.c) + Real(gamma.d);
        Complex cdb = conj(z) * Real(gamma.c) + Real(gamma.d);
        Complex lhs = pow_int(cd, -w.r) * pow_int(cdb, -w.s) * f(gamma.apply(z));
        worst = max(worst, abs(lhs - f(z)));
    }
    return worst;
}

// exterior-derivative residual of sigma = u1 dz + u2 dzbar at z:
// componentwise fd_dzbar(u1) - fd_dz(u2), max norm
using VectorZFunction = std::function<std::vector<Complex>(const Complex &)>;

inline Real closure_residual(const VectorZFunction &u1, const VectorZFunction &u2, const Complex &z,
                             const StencilConfig &cfg = {})
{
    Real h = cfg.step_at(z);
    if (!(z.imag() - h * Real(2) > Real(0))) {
        throw std::invalid_argument("stencil exits the upper half plane");
    }
    Complex ih = i_unit() * h;
    auto eval8 = [&](const VectorZFunction &u) {
        struct Evals {
            std::vector<Complex> xp, xm, xp2, xm2, yp, ym, yp2, ym2;
        } e;
        e.xp = u(z + h);
        e.xm = u(z - h);
        e.xp2 = u(z + Complex(h * Real(2)));
        e.xm2 = u(z - Complex(h * Real(2)));
        e.yp = u(z + ih);
        e.ym = u(z - ih);
        e.yp2 = u(z + ih * Real(2));
        e.ym2 = u(z - ih * Real(2));
        return e;
    };
    auto e1 = eval8(u1);
    auto e2 = eval8(u2);
    size_t dim = e1.xp.size();
    if (e2.xp.size() != dim) throw std::invalid_argument("closure_residual: component mismatch");
    Real h12 = h * Real(12);
    Real worst(0);
    for (size_t i = 0; i < dim; ++i) {
        Complex fx1 = (e1.xm2[i] - e1.xp2[i] + (e1.xp[i] - e1.xm[i]) * Real(8)) / h12;
        Complex fy1 = (e1.ym2[i] - e1.yp2[i] + (e1.yp[i] - e1.ym[i]) * Real(8)) / h12;
        Complex dzb_u1 = (fx1 + i_unit() * fy1) * Real(0.5);
        Complex fx2 = (e2.xm2[i] - e2.xp2[i] + (e2.xp[i] - e2.xm[i]) * Real(8)) / h12;
        Complex fy2 = (e2.ym2[i] - e2.yp2[i] + (e2.yp[i] - e2.ym[i]) * Real(8)) / h12;
        Complex dz_u2 = (fx2 - i_unit() * fy2) * Real(0.5);
        worst = max(worst, abs(dzb_u1 - dz_u2));
    }
    return worst;
}

} // namespace ramif
