#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eak/bernoulli.hpp"

#include <random>

using namespace eak;

TEST_CASE("Bernoulli polynomials") {
    CHECK(bernoulli_poly(1, Rational(1, 4)) == Rational(-1, 4));
    CHECK(bernoulli_poly(2, 0) == Rational(1, 6));
    CHECK(bernoulli_poly(3, Rational(1, 2)) == 0);
    CHECK(bernoulli_number(4) == Rational(-1, 30));
    CHECK(bernoulli_number(12) == Rational(-691, 2730));
    CHECK(bernoulli_number(16) == Rational(-3617, 510));
    CHECK_THROWS_AS(bernoulli_poly(17, 0), std::out_of_range);
    // B_3(x) = x^3 - 3/2 x^2 + 1/2 x
    for (int n = -6; n <= 6; ++n) {
        Rational x(n, 5);
        CHECK(bernoulli_poly(3, x) == x * x * x - Rational(3, 2) * x * x + Rational(1, 2) * x);
    }
}

TEST_CASE("periodized and one-sided values") {
    CHECK(periodized(1, 5) == 0);
    CHECK(periodized(2, Rational(7, 3)) == Rational(-1, 18));
    CHECK(periodized(1, Rational(-1, 3)) == Rational(1, 6));
    CHECK(one_sided_B1(2, Side::plus) == Rational(-1, 2));
    CHECK(one_sided_B1(2, Side::minus) == Rational(1, 2));
    CHECK(one_sided_B1(Rational(1, 4), Side::plus) == Rational(-1, 4));
    CHECK(bernoulli_truncated(2, Rational(3, 2)) == 0);
    CHECK(bernoulli_truncated(2, 1) == Rational(1, 6));
}

TEST_CASE("periodicity, parity and one-sided identities") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
    for (int i = 0; i < 400; ++i) {
        Rational x(Integer(num(rng)), Integer(den(rng)));
        for (int r = 1; r <= 5; ++r) CHECK(periodized(r, x + 1) == periodized(r, x));
        CHECK(periodized(1, -x) == -periodized(1, x));
        CHECK(periodized(2, -x) == periodized(2, x));
        CHECK(one_sided_B1(x, Side::plus) == periodized(1, x) - Rational(1, 2) * indicator_Z(x));
        CHECK(one_sided_B1(x, Side::minus) == periodized(1, x) + Rational(1, 2) * indicator_Z(x));
    }
}
