#include <catch2/catch_amalgamated.hpp>

using Catch::Approx;

#include "ramif/findiff.hpp"
#include "ramif/lattice.hpp"

using namespace ramif;

TEST_CASE("first-order stencils")
{
    mp::set_precision_bits(128);
    Complex zi(Real(0), Real(1));

    SECTION("polynomial exactness for d/dz")
    {
        auto f = [](const Complex &z) { return z * z; };
        Complex d = fd_dz(f, zi);
        REQUIRE(abs(d - Complex(Real(0), Real(2))).to_double() < 1e-12);
    }
    SECTION("holomorphic functions have vanishing dzbar")
    {
        auto f = [](const Complex &z) { return z * z; };
        REQUIRE(abs(fd_dzbar(f, zi)).to_double() < 1e-12);
    }
    SECTION("halving h reduces the residual by at least 2^order / 1.5")
    {
        // quintic: first beyond 4th-order exactness
        auto f = [](const Complex &z) { return pow_int(z, 5) * conj(z); };
        auto exact = [](const Complex &z) { return pow_int(z, 4) * conj(z) * Real(5); };
        Complex z(Real(0.3), Real(1.1));
        Real h1(0.01), h2(0.005);
        Real r1 = abs(fd_dz(f, z, StencilConfig(h1, 4)) - exact(z));
        Real r2 = abs(fd_dz(f, z, StencilConfig(h2, 4)) - exact(z));
        REQUIRE(r1 / r2 > Real(16.0 / 1.5));
        Real s1 = abs(fd_dz(f, z, StencilConfig(h1, 2)) - exact(z));
        Real s2 = abs(fd_dz(f, z, StencilConfig(h2, 2)) - exact(z));
        REQUIRE(s1 / s2 > Real(4.0 / 1.5));
    }
    SECTION("stencil must stay in the upper half plane")
    {
        auto f = [](const Complex &z) { return z; };
        REQUIRE_THROWS_AS(fd_dz(f, Complex(Real(0), Real(1e-4)), StencilConfig(Real(1e-3), 4)),
                          std::invalid_argument);
    }
}

TEST_CASE("weighted Laplacian stencil")
{
    mp::set_precision_bits(128);

    SECTION("constants are annihilated at weights (0,0)")
    {
        auto f = [](const Complex &) { return Complex(Real(3.7)); };
        REQUIRE(abs(fd_laplacian(f, {0, 0}, Complex(Real(0.3), Real(1.1)))).to_double() < 1e-20);
    }
    SECTION("y^a is an eigenfunction of the weight-(0,0) Laplacian")
    {
        // Delta y^a = -a(a-1) y^a
        auto f = [](const Complex &z) { return Complex(pow_int(z.imag(), 3)); };
        Complex z(Real(0.3), Real(1.1));
        Complex lhs = fd_laplacian(f, {0, 0}, z);
        Complex rhs = Complex(pow_int(z.imag(), 3) * Real(-6));
        REQUIRE((abs(lhs - rhs) / abs(rhs)).to_double() < 1e-9);
    }
    SECTION("lattice Eisenstein eigenvalue via finite differences")
    {
        LatticeTruncation tr{80, true};
        auto f = [&](const Complex &z) {
            return eval_Ers(2, 0, HalfPlanePoint(z), tr).value;
        };
        Complex z(Real(0.3), Real(1.1));
        Complex lhs = fd_laplacian(f, {2, 0}, z);
        Complex rhs = f(z) * Real(-2);
        REQUIRE((abs(lhs - rhs) / abs(rhs)).to_double() < 1e-6);
    }
    SECTION("one-loop graph function eigenvalue via finite differences")
    {
        // the graph-function literature writes Delta C = a(a-1) C with the
        // hyperbolic Laplacian; under the weight-(0,0) operator here that is
        // Delta C = -a(a-1) C
        LatticeTruncation tr{80, true};
        auto f = [&](const Complex &z) {
            return eval_mgf({2, 2}, HalfPlanePoint(z), tr).value;
        };
        Complex z(Real(0.3), Real(1.1));
        Complex lhs = fd_laplacian(f, {0, 0}, z);
        Complex rhs = f(z) * Real(-12);
        REQUIRE((abs(lhs - rhs) / abs(rhs)).to_double() < 1e-6);
    }
}

TEST_CASE("modularity residual")
{
    mp::set_precision_bits(128);
    auto pts = sample_points();

    SECTION("constants are modular of weights (0,0)")
    {
        auto f = [](const Complex &) { return Complex(Real(2.5)); };
        REQUIRE(modularity_residual(f, {0, 0}, ModularMatrix::S(), pts).to_double() < 1e-30);
        REQUIRE(modularity_residual(f, {0, 0}, ModularMatrix::T(), pts).to_double() < 1e-30);
    }
    SECTION("lattice Eisenstein series are modular under T within bounds")
    {
        LatticeTruncation tr{80, true};
        auto ev = [&](const Complex &z) { return eval_Ers(2, 0, HalfPlanePoint(z), tr); };
        auto f = [&](const Complex &z) { return ev(z).value; };
        Real res = modularity_residual(f, {2, 0}, ModularMatrix::T(), pts);
        // T only shifts x; bounds at z and Tz are comparable
        Real budget(0);
        for (const auto &z : pts) budget = max(budget, ev(z).bound * Real(2));
        REQUIRE(res <= budget + Real(1e-20));
    }
    SECTION("y is a non-modular witness under S at 2i")
    {
        // Im(-1/z) = y/|z|^2, so the defect at 2i is |2 - 1/2| = 3/2
        auto f = [](const Complex &z) { return Complex(z.imag()); };
        Real res = modularity_residual(f, {0, 0}, ModularMatrix::S(), {Complex(Real(0), Real(2))});
        REQUIRE(res.to_double() == Approx(1.5).epsilon(1e-12));
    }
    SECTION("cocycle consistency on S, T, ST")
    {
        LatticeTruncation tr{60, true};
        auto f = [&](const Complex &z) { return eval_Ers(1, 1, HalfPlanePoint(z), tr).value; };
        ModularMatrix S = ModularMatrix::S(), T = ModularMatrix::T(), ST = S * T;
        std::vector<Complex> base{Complex(Real(0.3), Real(1.1))};
        // |f||_ST - f| <= |f||_S at Tz transported| + |f||_T - f|; all three
        // should sit at the evaluation-noise scale for a modular function
        Real rS = modularity_residual(f, {1, 1}, S, {T.apply(base[0])});
        Real rT = modularity_residual(f, {1, 1}, T, base);
        Real rST = modularity_residual(f, {1, 1}, ST, base);
        Real budget = (rS + rT + Real(1e-12)) * Real(3);
        REQUIRE(rST <= budget);
    }
}

TEST_CASE("closure residual of an exact form")
{
    mp::set_precision_bits(128);
    // d(z zbar): u1 = zbar, u2 = z is closed by construction
    VectorZFunction u1 = [](const Complex &z) { return std::vector<Complex>{conj(z)}; };
    VectorZFunction u2 = [](const Complex &z) { return std::vector<Complex>{z}; };
    Real res = closure_residual(u1, u2, Complex(Real(0.3), Real(1.1)));
    REQUIRE(res.to_double() < 1e-15);
}
