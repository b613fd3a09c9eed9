#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sqfcs/jet.hpp"

using sqfcs::Jet;

namespace {

Jet random_jet(std::mt19937_64& rng, std::size_t order, double c0_lo,
               double c0_hi, double coeff_scale = 1.0) {
    std::uniform_real_distribution<double> head(c0_lo, c0_hi);
    std::uniform_real_distribution<double> tail(-coeff_scale, coeff_scale);
    Jet j(order);
    j[0] = head(rng);
    for (std::size_t k = 1; k <= order; ++k) j[k] = tail(rng);
    return j;
}

double max_coeff_diff(const Jet& a, const Jet& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k <= a.order(); ++k)
        worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

}  // namespace

TEST_CASE("jet multiplication truncates the Cauchy product") {
    Jet a = Jet::variable(2) + 1.0;  // 1 + t
    Jet b = 1.0 - Jet::variable(2);  // 1 - t
    const Jet p = a * b;
    CHECK(p[0] == 1.0);
    CHECK(p[1] == 0.0);
    CHECK(p[2] == -1.0);

    Jet q(2);  // (1 + t + t^2)^2 -> (1, 2, 3)
    q[0] = 1.0;
    q[1] = 1.0;
    q[2] = 1.0;
    const Jet qq = q * q;
    CHECK(qq[0] == 1.0);
    CHECK(qq[1] == 2.0);
    CHECK(qq[2] == 3.0);
}

TEST_CASE("jet multiplicative identity") {
    std::mt19937_64 rng(11);
    const Jet one(6, 1.0);
    for (int i = 0; i < 50; ++i) {
        const Jet a = random_jet(rng, 6, -2.0, 2.0);
        CHECK(max_coeff_diff(a * one, a) == 0.0);
    }
}

TEST_CASE("jet exp matches the Taylor series of e^t") {
    const Jet e = exp(Jet::variable(3));
    CHECK(e[0] == 1.0);
    CHECK(e[1] == 1.0);
    CHECK(e[2] == Catch::Approx(0.5).margin(1e-16));
    CHECK(e[3] == Catch::Approx(1.0 / 6.0).margin(1e-16));

    const Jet em = exp(-Jet::variable(2));
    CHECK(em[0] == 1.0);
    CHECK(em[1] == -1.0);
    CHECK(em[2] == Catch::Approx(0.5).margin(1e-16));
}

TEST_CASE("jet exp is a homomorphism: exp(a+b) = exp(a) exp(b)") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const Jet a = random_jet(rng, 8, -1.0, 1.0);
        const Jet b = random_jet(rng, 8, -1.0, 1.0);
        const double diff = max_coeff_diff(exp(a + b), exp(a) * exp(b));
        CHECK(diff <= 1e-14 * 20.0);
    }
}

TEST_CASE("jet sqrt undoes squaring") {
    Jet sq(2);  // 1 + 2t + t^2 = (1 + t)^2
    sq[0] = 1.0;
    sq[1] = 2.0;
    sq[2] = 1.0;
    const Jet r = sqrt(sq);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 1.0);
    CHECK(r[2] == 0.0);

    const Jet four(3, 4.0);
    const Jet two = sqrt(four);
    CHECK(two[0] == 2.0);
    CHECK(two[1] == 0.0);
    CHECK(two[2] == 0.0);

    std::mt19937_64 rng(37);
    for (int i = 0; i < 100; ++i) {
        const Jet a = random_jet(rng, 8, 0.5, 4.0);
        const Jet s = sqrt(a);
        CHECK(max_coeff_diff(s * s, a) <= 1e-13 * 10.0);
    }
}

TEST_CASE("jet division inverts multiplication") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 100; ++i) {
        const Jet f = random_jet(rng, 8, -2.0, 2.0);
        const Jet g = random_jet(rng, 8, 0.5, 2.0);
        CHECK(max_coeff_diff((f / g) * g, f) <= 1e-12);
    }
}

TEST_CASE("jet ring axioms hold to double precision") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 100; ++i) {
        const Jet a = random_jet(rng, 10, -1.0, 1.0, 1000.0);
        const Jet b = random_jet(rng, 10, -1.0, 1.0, 1000.0);
        const Jet c = random_jet(rng, 10, -1.0, 1.0, 1000.0);
        // distributivity, relative to the coefficient scale 1e3 -> 1e6 products
        CHECK(max_coeff_diff((a + b) * c, a * c + b * c) <= 1e-13 * 1e7);
        // associativity
        CHECK(max_coeff_diff((a * b) * c, a * (b * c)) <= 1e-13 * 1e10);
        // commutativity up to summation order
        CHECK(max_coeff_diff(a * b, b * a) <= 1e-13 * 1e7);
    }
}

TEST_CASE("jet order mismatch and domain errors") {
    CHECK_THROWS_AS(Jet(3) + Jet(4), std::invalid_argument);
    CHECK_THROWS_AS(Jet(3) * Jet(2), std::invalid_argument);
    CHECK_THROWS_AS(sqrt(Jet(3, 0.0)), std::domain_error);
    CHECK_THROWS_AS(sqrt(Jet(3, -1.0)), std::domain_error);
    CHECK_THROWS_AS(Jet(3, 1.0) / Jet(3, 0.0), std::domain_error);
}

TEST_CASE("jet derivative accessor applies the factorial") {
    const Jet e = exp(Jet::variable(6));
    for (std::size_t n = 0; n <= 6; ++n)
        CHECK(e.derivative(n) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(e.derivative(7), std::out_of_range);
}

TEST_CASE("expm1 jet has an exact zero head at a0 = 0") {
    const Jet m = expm1(Jet::variable(4));
    CHECK(m[0] == 0.0);
    CHECK(m[1] == 1.0);
}
