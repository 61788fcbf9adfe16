#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eak/oracle.hpp"
#include "fixtures.hpp"

#include <cmath>

using namespace eak;

namespace {

Integer binomial_simplex(long t) { return Integer((t + 1) * (t + 2) * (t + 3) / 6); }

const ExactValue kSimplexA2(Rational(-5, 12), {{3, AngleValue{1, Rational(1, 3)}}});

}  // namespace

TEST_CASE("lattice point counts") {
    Polytope s = fixtures::simplex();
    CHECK(count_points(s, Rational(2)) == 10);
    CHECK(count_points(s, Rational(1, 2)) == 1);
    for (long t = 1; t <= 6; ++t) CHECK(count_points(s, Rational(t)) == binomial_simplex(t));
    CHECK(count_points(fixtures::cube(3), Rational(3)) == 64);
    CHECK(count_points(fixtures::cube(4), Rational(2)) == 81);
    CHECK(count_points(fixtures::cube(2), Rational(5, 2)) == 9);
}

TEST_CASE("counts do not depend on the thread count") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 10; ++it) {
        Polytope p = fixtures::random_rational_hull(rng, 3, 7, 5, 3);
        Rational t = fixtures::random_t(rng, 3, 4);
        OracleOptions one, many;
        many.threads = 4;
        CHECK(count_points(p, t, one) == count_points(p, t, many));
        CHECK(solid_angle_sum(p, t, one).exact == solid_angle_sum(p, t, many).exact);
    }
}

TEST_CASE("solid angles at points") {
    Polytope s = fixtures::simplex();
    AngleAtPoint o = solid_angle_at(s, {0, 0, 0});
    CHECK(o.locus == Locus::vertex);
    CHECK(o.value.exact == ExactValue(Rational(1, 8)));
    CHECK(solid_angle_at(fixtures::order_simplex(), {0, 0, 0}).value.exact == ExactValue(Rational(1, 48)));
    CHECK(solid_angle_at(s, {Rational(1, 4), Rational(1, 4), Rational(1, 4)}).locus == Locus::interior);
    CHECK(solid_angle_at(s, {Rational(1, 4), Rational(1, 4), Rational(1, 4)}).value.exact == ExactValue(Rational(1)));
    CHECK(solid_angle_at(s, {0, Rational(1, 4), Rational(1, 4)}).value.exact == ExactValue(Rational(1, 2)));
    AngleAtPoint e = solid_angle_at(s, {0, Rational(1, 2), Rational(1, 2)});
    CHECK(e.locus == Locus::codim2);
    CHECK(e.value.exact == ExactValue::omega({1, Rational(1, 3)}));
    CHECK(solid_angle_at(s, {1, 1, 1}).locus == Locus::outside);
    CHECK(solid_angle_at(s, {1, 1, 1}).value.exact.is_zero());
}

TEST_CASE("solid-angle sum of the standard simplex at t = 1") {
    SolidAngleValue a = solid_angle_sum(fixtures::simplex(), Rational(1));
    CHECK(a.exact == ExactValue(Rational(1, 6)) + kSimplexA2);
    CHECK_FALSE(a.has_mc);
}

TEST_CASE("solid-angle sum of the cube is t^d at integers") {
    for (long t = 1; t <= 4; ++t) CHECK(solid_angle_sum(fixtures::cube(3), Rational(t)).exact == ExactValue(Rational(t * t * t)));
    for (long t = 1; t <= 4; ++t)
        CHECK(solid_angle_sum(fixtures::cube(2), Rational(t)).exact == ExactValue(Rational(t * t)));
}

TEST_CASE("solid-angle sum of the standard simplex at integers") {
    for (long t = 1; t <= 5; ++t) {
        ExactValue expect = ExactValue(Rational(t * t * t, 6)) + kSimplexA2 * Rational(t);
        CHECK(solid_angle_sum(fixtures::simplex(), Rational(t)).exact == expect);
    }
}

TEST_CASE("point classification and the face-by-face cross check") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 15; ++it) {
        Polytope p = fixtures::random_rational_hull(rng, 3, 6, 4, 3);
        Rational t = fixtures::random_t(rng, 3, 3);
        std::uint64_t total = 0;
        for (auto& [ts, n] : classify_points(p, t)) {
            CHECK(n > 0);
            CHECK(p.face_by_tight_set(ts) != nullptr);
            total += n;
        }
        CHECK(Integer(total) == count_points(p, t));
        CHECK(face_angle_cross_check(p, t).exact == solid_angle_sum(p, t).exact);
    }
}

TEST_CASE("face angles in dimension four") {
    OracleOptions opts;
    opts.mc_samples = 200000;
    Polytope c = fixtures::cube(4);
    auto angles = face_angles(c, opts);
    auto faces = c.faces();
    REQUIRE(angles.size() == faces.size());
    for (std::size_t i = 0; i < faces.size(); ++i) {
        int codim = int(faces[i].codim);
        if (codim <= 3) {
            CHECK_FALSE(angles[i].has_mc);
            CHECK(angles[i].exact == ExactValue(Rational(1, 1L << codim)));
        } else {
            REQUIRE(angles[i].has_mc);
            CHECK(angles[i].exact.is_zero());
            CHECK(std::abs(angles[i].mc - 1.0 / 16) < 6 * angles[i].mc_std_error);
        }
    }
    // same seed, same estimate
    auto again = face_angles(c, opts);
    CHECK(again.back().mc == angles.back().mc);
}

TEST_CASE("Girard angles at vertices of random 3-polytopes sum to the Gram relation") {
    // sum over faces of (-1)^dim F omega(F) = 0 for a 3-polytope
    std::mt19937_64 rng(21);
    for (int it = 0; it < 20; ++it) {
        Polytope p = fixtures::random_rational_hull(rng, 3, 7, 6, 2);
        auto angles = face_angles(p);
        auto faces = p.faces();
        ExactValue s;
        for (std::size_t i = 0; i < faces.size(); ++i)
            s += faces[i].dim % 2 == 0 ? angles[i].exact : -angles[i].exact;
        CHECK(s.is_zero());
    }
}

TEST_CASE("polynomial interpolation") {
    std::vector<std::pair<Rational, ExactValue>> samples;
    ExactValue w = ExactValue::omega({1, Rational(1, 3)});
    for (long x = 1; x <= 4; ++x) {
        Rational t(x, 2);
        samples.push_back({t, ExactValue(pow(t, 3) * 2 - t) + w * (t + 1)});
    }
    auto c = interpolate_coefficients(samples, 3);
    REQUIRE(c.size() == 4);
    CHECK(c[3] == ExactValue(Rational(2)));
    CHECK(c[2].is_zero());
    CHECK(c[1] == ExactValue(Rational(-1)) + w);
    CHECK(c[0] == w);
    samples[1].first = samples[0].first;
    CHECK_THROWS_WITH(interpolate_coefficients(samples, 3),
                      "singular interpolation system (duplicate sample points)");
}

TEST_CASE("Ehrhart coefficients by interpolation") {
    auto c = ehrhart_coefficients_at(fixtures::simplex(), Rational(1));
    CHECK(c == std::vector<Rational>{1, Rational(11, 6), 1, Rational(1, 6)});
    auto q = solid_angle_coefficients_at(fixtures::cube(3), Rational(2));
    for (int k = 0; k < 3; ++k) CHECK(q[k].exact.is_zero());
    CHECK(q[3].exact == ExactValue(Rational(1)));
}

TEST_CASE("Ehrhart-Macdonald reciprocity on rational polytopes") {
    // interior points of tP = (-1)^d L_P(-t), with L_P evaluated through the
    // quasi-coefficients of the residue class of -t
    std::mt19937_64 rng(12);
    for (int it = 0; it < 10; ++it) {
        Polytope p = fixtures::random_rational_hull(rng, 3, 6, 3, 2);
        Rational m(p.denominator());
        Rational t = fixtures::random_t(rng, 2, 3);
        Rational shift = m * Rational(Integer((t / m).ceil() + 1));
        auto c = ehrhart_coefficients_at(p, shift - t);
        Rational at_minus_t;
        for (int k = 3; k >= 0; --k) at_minus_t = at_minus_t * (-t) + c[k];
        std::uint64_t interior = 0;
        for (auto& [ts, n] : classify_points(p, t))
            if (ts == 0) interior += n;
        CHECK(Rational(Integer(interior)) == -at_minus_t);
    }
}

TEST_CASE("budget and input errors") {
    OracleOptions tiny;
    tiny.budget = 100;
    CHECK_THROWS_WITH_AS(count_points(fixtures::cube(3), Rational(10), tiny),
                         doctest::Contains("enumeration budget exceeded"), std::runtime_error);
}
