#include <catch2/catch_amalgamated.hpp>

using Catch::Approx;

#include "ramif/lattice.hpp"
#include "ramif/qexpansion.hpp"

#include <random>

using namespace ramif;

namespace {

// deterministic random expansions for the operator-identity properties
QExpansion random_expansion(std::mt19937 &rng, WeightPair w, int q_order = 4, int max_mode = -1)
{
    if (max_mode < 0) max_mode = q_order;
    std::uniform_int_distribution<int> jdist(-4, 4), mdist(0, max_mode);
    std::uniform_real_distribution<double> cdist(-1.0, 1.0);
    QExpansion e(w, q_order);
    for (int t = 0; t < 12; ++t) {
        e.set_coeff(jdist(rng), mdist(rng), mdist(rng), Complex(cdist(rng), cdist(rng)));
    }
    return e;
}

WeightPair random_even_weights(std::mt19937 &rng)
{
    std::uniform_int_distribution<int> wdist(-3, 3);
    int r = wdist(rng), s = wdist(rng);
    if ((r + s) % 2 != 0) s += 1;
    return {r, s};
}

} // namespace

TEST_CASE("additive structure")
{
    mp::set_precision_bits(128);
    QExpansion g4 = holomorphic_G(4, 8);

    SECTION("identity and inverse")
    {
        QExpansion z = QExpansion::zero(WeightPair{4, 0}, 8);
        REQUIRE(coeff_distance(g4 + z, g4).is_zero());
        REQUIRE((g4 + g4.scaled(-1L)).max_abs_coeff().is_zero());
    }
    SECTION("constant coefficient of G4 + G4 is 1/120")
    {
        QExpansion s = g4 + g4;
        REQUIRE(abs(s.coeff(0, 0, 0) - Complex(Rational(1, 120).to_real())).to_double() < 1e-37);
    }
    SECTION("weight mismatch rejected with both pairs named")
    {
        QExpansion g6 = holomorphic_G(6, 8);
        try {
            QExpansion bad = g4 + g6;
            FAIL("expected weight mismatch");
        } catch (const std::invalid_argument &err) {
            std::string msg = err.what();
            REQUIRE(msg.find("(4,0)") != std::string::npos);
            REQUIRE(msg.find("(6,0)") != std::string::npos);
        }
    }
}

TEST_CASE("multiplicative structure")
{
    mp::set_precision_bits(128);
    std::mt19937 rng(42);
    QExpansion g4 = holomorphic_G(4, 8);

    SECTION("multiplicative identity")
    {
        QExpansion one = QExpansion::monomial(WeightPair{0, 0}, 8, 0, 0, 0, Complex(Real(1)));
        REQUIRE(coeff_distance(g4 * one, g4).to_double() < 1e-37);
    }
    SECTION("commutativity on random pairs")
    {
        for (int t = 0; t < 10; ++t) {
            QExpansion a = random_expansion(rng, random_even_weights(rng));
            QExpansion b = random_expansion(rng, random_even_weights(rng));
            REQUIRE(coeff_distance(a * b, b * a).to_double() < 1e-30);
        }
    }
    SECTION("product truncates to min q_order and adds weights")
    {
        QExpansion a = random_expansion(rng, WeightPair{2, 0}, 6);
        QExpansion b = random_expansion(rng, WeightPair{1, 1}, 4);
        QExpansion p = a * b;
        REQUIRE(p.q_order() == 4);
        REQUIRE(p.weights() == WeightPair{3, 1});
    }
}

TEST_CASE("L-multiplication")
{
    mp::set_precision_bits(128);
    std::mt19937 rng(7);
    QExpansion e = random_expansion(rng, WeightPair{2, 2});

    REQUIRE(coeff_distance(e.mul_L(0), e).is_zero());
    REQUIRE(coeff_distance(e.mul_L(1).mul_L(-1), e).to_double() < 1e-35);
    REQUIRE(e.mul_L(1).weights() == WeightPair{1, 1});

    QExpansion unit = QExpansion::monomial(WeightPair{1, 1}, 4, 0, 0, 0, Complex(Real(1)));
    auto at_i = unit.mul_L(1).evaluate(Complex(Real(0), Real(1)));
    REQUIRE(at_i.value.real().to_double() == Approx(-2 * 3.14159265358979324).epsilon(1e-15));
    REQUIRE(at_i.value.imag().to_double() == Approx(0.0).margin(1e-30));
}

TEST_CASE("differential operators on basis terms")
{
    mp::set_precision_bits(128);

    SECTION("del kills constants at weights (0,0)")
    {
        QExpansion c = QExpansion::monomial(WeightPair{0, 0}, 4, 0, 0, 0, Complex(Real(1)));
        REQUIRE(c.partial().max_abs_coeff().is_zero());
        REQUIRE(c.partial_bar().max_abs_coeff().is_zero());
        REQUIRE(c.laplacian().max_abs_coeff().is_zero());
    }
    SECTION("del of q at weights (2,0) is (-4 pi y + 2) q at weights (3,-1)")
    {
        QExpansion q = QExpansion::monomial(WeightPair{2, 0}, 4, 0, 1, 0, Complex(Real(1)));
        QExpansion d = q.partial();
        REQUIRE(d.weights() == WeightPair{3, -1});
        REQUIRE(abs(d.coeff(0, 1, 0) - Complex(Real(2))).to_double() < 1e-37);
        REQUIRE(abs(d.coeff(1, 1, 0) + Complex(Real(4) * const_pi())).to_double() < 1e-37);
    }
    SECTION("delbar of qbar at weights (0,2) mirrors it")
    {
        QExpansion qb = QExpansion::monomial(WeightPair{0, 2}, 4, 0, 0, 1, Complex(Real(1)));
        QExpansion d = qb.partial_bar();
        REQUIRE(d.weights() == WeightPair{-1, 3});
        REQUIRE(abs(d.coeff(0, 0, 1) - Complex(Real(2))).to_double() < 1e-37);
        REQUIRE(abs(d.coeff(1, 0, 1) + Complex(Real(4) * const_pi())).to_double() < 1e-37);
    }
}

TEST_CASE("operator identities on random expansions")
{
    mp::set_precision_bits(128);
    std::mt19937 rng(2024);
    const double tol = 1e-25;

    SECTION("Leibniz for del and delbar")
    {
        for (int t = 0; t < 20; ++t) {
            QExpansion f = random_expansion(rng, random_even_weights(rng));
            QExpansion g = random_expansion(rng, random_even_weights(rng));
            QExpansion lhs = (f * g).partial();
            QExpansion rhs = f.partial() * g + f * g.partial();
            REQUIRE(coeff_distance(lhs, rhs).to_double() < tol);
            QExpansion lhsb = (f * g).partial_bar();
            QExpansion rhsb = f.partial_bar() * g + f * g.partial_bar();
            REQUIRE(coeff_distance(lhsb, rhsb).to_double() < tol);
        }
    }
    SECTION("the two Laplacian factorizations agree")
    {
        for (int t = 0; t < 20; ++t) {
            QExpansion f = random_expansion(rng, random_even_weights(rng));
            int r = f.weights().r, s = f.weights().s;
            QExpansion lhs = f.partial().partial_bar().scaled(-1L) + f.scaled(static_cast<long>(r) * (s - 1));
            QExpansion rhs = f.partial_bar().partial().scaled(-1L) + f.scaled(static_cast<long>(s) * (r - 1));
            REQUIRE(coeff_distance(lhs, rhs).to_double() < tol);
            REQUIRE(coeff_distance(lhs, f.laplacian()).to_double() < tol);
        }
    }
    SECTION("Delta L f = L Delta f - (p+q) L f")
    {
        for (int t = 0; t < 20; ++t) {
            WeightPair w = random_even_weights(rng);
            QExpansion f = random_expansion(rng, w);
            long pq = (w.r - 1) + (w.s - 1);
            QExpansion lhs = f.mul_L(1).laplacian();
            QExpansion rhs = f.laplacian().mul_L(1) - f.mul_L(1).scaled(pq);
            REQUIRE(coeff_distance(lhs, rhs).to_double() < tol);
        }
    }
    SECTION("conjugation intertwines del and delbar")
    {
        for (int t = 0; t < 10; ++t) {
            QExpansion f = random_expansion(rng, random_even_weights(rng));
            REQUIRE(coeff_distance(f.partial().conjugate(), f.conjugate().partial_bar()).to_double() <
                    tol);
            REQUIRE(coeff_distance(f.conjugate().conjugate(), f).is_zero());
        }
    }
}

TEST_CASE("conjugate of G4 is the qbar series with the same real coefficients")
{
    mp::set_precision_bits(128);
    QExpansion g4 = holomorphic_G(4, 8);
    QExpansion gb = g4.conjugate();
    REQUIRE(gb.weights() == WeightPair{0, 4});
    for (int n = 0; n <= 8; ++n) {
        REQUIRE(abs(gb.coeff(0, 0, n) - g4.coeff(0, n, 0)).is_zero());
        REQUIRE(gb.coeff(0, 0, n).imag().is_zero());
    }
}

TEST_CASE("evaluation")
{
    mp::set_precision_bits(128);

    SECTION("zero expansion evaluates to zero")
    {
        QExpansion z = QExpansion::zero(WeightPair{0, 0}, 8);
        auto r = z.evaluate(Complex(Real(0.3), Real(1.1)));
        REQUIRE(r.value.is_zero());
        REQUIRE(r.tail.is_zero());
    }
    SECTION("G4 at z = i matches direct q-series summation, rel 1e-12")
    {
        QExpansion g4 = holomorphic_G(4, 40);
        Complex zi(Real(0), Real(1));
        auto r = g4.evaluate(zi);
        // oracle: direct summation of the defining series with 200 terms
        Real two_pi = Real(2) * const_pi();
        Complex q = exp(i_unit() * two_pi * zi);
        Complex oracle((-bernoulli(4) / Rational(8)).to_real());
        Complex qp(Real(1));
        for (int n = 1; n <= 200; ++n) {
            qp *= q;
            Real sig;
            mpfr_set_ui(sig.raw(), static_cast<unsigned long>(divisor_sigma(3, n)), MPFR_RNDN);
            oracle += qp * sig;
        }
        REQUIRE((abs(r.value - oracle) / abs(oracle)).to_double() < 1e-12);
        REQUIRE(r.tail.to_double() < 1e-30);
    }
    SECTION("evaluate is a ring homomorphism on the truncation-compatible subset")
    {
        std::mt19937 rng(5);
        Complex z(Real(0.3), Real(1.1));
        for (int t = 0; t < 5; ++t) {
            // modes <= 4 so the q_order-8 product keeps every cross term
            QExpansion a = random_expansion(rng, random_even_weights(rng), 8, 4);
            QExpansion b = random_expansion(rng, random_even_weights(rng), 8, 4);
            auto fa = a.evaluate(z), fb = b.evaluate(z), fab = (a * b).evaluate(z);
            Real lhs = abs(fab.value - fa.value * fb.value);
            Real budget = fab.tail + fa.tail * abs(fb.value) + fb.tail * abs(fa.value) +
                          fa.tail * fb.tail + Real(1e-25);
            REQUIRE(lhs <= budget);
        }
    }
    SECTION("points off the upper half plane are rejected")
    {
        QExpansion g4 = holomorphic_G(4, 8);
        REQUIRE_THROWS_AS(g4.evaluate(Complex(Real(0.3), Real(-1.0))), std::invalid_argument);
    }
}
