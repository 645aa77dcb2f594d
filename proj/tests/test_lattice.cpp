#include <catch2/catch_amalgamated.hpp>

using Catch::Approx;

#include "ramif/lattice.hpp"
#include "ramif/zeta.hpp"

using namespace ramif;

TEST_CASE("holomorphic Eisenstein q-series")
{
    mp::set_precision_bits(128);
    QExpansion g4 = holomorphic_G(4, 8);
    REQUIRE(abs(g4.coeff(0, 0, 0) - Complex(Rational(1, 240).to_real())).to_double() < 1e-37);
    REQUIRE(g4.coeff(0, 2, 0).real().to_double() == 9.0); // sigma_3(2) = 1 + 8

    // divisor enumeration oracle for sigma_5(6)
    unsigned long long s = 0;
    for (int d : {1, 2, 3, 6}) {
        unsigned long long p = 1;
        for (int e = 0; e < 5; ++e) p *= static_cast<unsigned long long>(d);
        s += p;
    }
    REQUIRE(s == 8052ULL);
    QExpansion g6 = holomorphic_G(6, 8);
    REQUIRE(g6.coeff(0, 6, 0).real().to_double() == 8052.0);

    REQUIRE_THROWS_AS(holomorphic_G(5, 8), std::invalid_argument);
    REQUIRE_THROWS_AS(holomorphic_G(2, 8), std::invalid_argument);
}

TEST_CASE("real analytic Eisenstein lattice sums")
{
    mp::set_precision_bits(128);
    HalfPlanePoint z(0.3, 1.1);

    SECTION("w = 0 rejected")
    {
        REQUIRE_THROWS_AS(eval_Ers(0, 0, z), std::invalid_argument);
    }
    SECTION("odd total weight vanishes identically")
    {
        auto fam = eval_Ers_family(3, z, {50, true});
        for (const auto &e : fam) {
            REQUIRE(e.value.is_zero());
            REQUIRE(e.bound.is_zero());
        }
    }
    SECTION("conjugation swaps the exponents")
    {
        LatticeTruncation tr{100, true};
        auto e20 = eval_Ers(2, 0, z, tr);
        auto e02 = eval_Ers(0, 2, z, tr);
        REQUIRE(abs(e20.value - conj(e02.value)).to_double() < 1e-30);
    }
    SECTION("E_{1,1} at z = i is real")
    {
        HalfPlanePoint zi(0.0, 1.0);
        auto e = eval_Ers(1, 1, zi, {100, true});
        REQUIRE(abs(e.value.imag()) < e.bound + Real(1e-30));
        REQUIRE(e.value.real().to_double() < 0.0);
    }
    SECTION("accelerated value sits inside the raw shell-integral bound")
    {
        auto acc = eval_Ers(1, 1, z, {120, true});
        auto raw = eval_Ers(1, 1, z, {120, false});
        REQUIRE(abs(acc.value - raw.value) <= raw.bound + acc.bound);
    }
    SECTION("shell monotonicity of the reported bound")
    {
        auto b1 = eval_Ers(2, 2, z, {60, true}).bound;
        auto b2 = eval_Ers(2, 2, z, {120, true}).bound;
        REQUIRE(b2 <= b1);
        auto r1 = eval_Ers(2, 2, z, {60, false}).bound;
        auto r2 = eval_Ers(2, 2, z, {120, false}).bound;
        REQUIRE(r2 <= r1);
    }
}

TEST_CASE("one-loop modular graph functions")
{
    mp::set_precision_bits(128);
    HalfPlanePoint z(0.3, 1.1);
    LatticeTruncation tr{150, true};

    SECTION("C_{1,1} = 4 L E_{1,1}")
    {
        auto c = eval_mgf({1, 1}, z, tr);
        auto e = eval_Ers(1, 1, z, tr);
        Real lhs = c.value.real();
        Real rhs = (e.value * z.L() * Real(4)).real();
        REQUIRE(abs(lhs - rhs) <= c.bound + e.bound * abs(z.L()) * Real(4) + Real(1e-25));
    }
    SECTION("C_{2,2} = C_{1,3}")
    {
        auto c22 = eval_mgf({2, 2}, z, tr);
        auto c13 = eval_mgf({1, 3}, z, tr);
        REQUIRE(abs(c22.value - c13.value) <= c22.bound + c13.bound + Real(1e-25));
    }
    SECTION("E_{3,3} against (45/2) C_{2,2} / L^3")
    {
        auto e33 = eval_Ers(3, 3, z, tr);
        auto c22 = eval_mgf({2, 2}, z, tr);
        Complex rhs = c22.value * Real(45) / Real(2) / Complex(pow_int(z.L(), 3));
        REQUIRE(abs(e33.value - rhs).to_double() < 1e-14);
    }
}

TEST_CASE("two-loop modular graph functions")
{
    mp::set_precision_bits(128);

    SECTION("C_{2,2,1} closed form at z = i, abs 1e-5")
    {
        HalfPlanePoint zi(0.0, 1.0);
        auto c = eval_mgf({2, 2, 1}, zi, {60, true});
        auto e44 = eval_Ers(4, 4, zi, {200, true});
        Real rhs = (e44.value * pow_int(zi.L(), 4)).real() / Real(1575) + zeta_value(5) / Real(30);
        REQUIRE(abs(c.value.real() - rhs).to_double() < 1e-5);
    }
    SECTION("radius sensitivity: doubling the radius shrinks the residual")
    {
        HalfPlanePoint zi(0.0, 1.3);
        auto e44 = eval_Ers(4, 4, zi, {200, true});
        Real rhs = (e44.value * pow_int(zi.L(), 4)).real() / Real(1575) + zeta_value(5) / Real(30);
        auto c30 = eval_mgf({2, 2, 1}, zi, {30, true});
        auto c60 = eval_mgf({2, 2, 1}, zi, {60, true});
        REQUIRE(abs(c60.value.real() - rhs) < abs(c30.value.real() - rhs));
        REQUIRE(c60.bound < c30.bound);
    }
    SECTION("argument validation")
    {
        HalfPlanePoint zi(0.0, 1.0);
        REQUIRE_THROWS_AS(eval_mgf({2, 0}, zi), std::invalid_argument);
        REQUIRE_THROWS_AS(eval_mgf({1, 1, 1, 1, 1}, zi), std::invalid_argument);
        REQUIRE_THROWS_AS(eval_mgf({1}, zi), std::invalid_argument);
    }
}

TEST_CASE("four-point sum self-convergence")
{
    mp::set_precision_bits(128);
    HalfPlanePoint z(0.0, 1.3);
    auto c24 = eval_mgf({1, 1, 2, 2}, z, {24, true});
    auto c30 = eval_mgf({1, 1, 2, 2}, z, {30, true});
    double drift = std::abs(c24.value.real().to_double() - c30.value.real().to_double()) /
                   std::abs(c30.value.real().to_double());
    REQUIRE(drift < 1e-2);
}
