#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eak/local_data.hpp"
#include "fixtures.hpp"

using namespace eak;

namespace {

void check_ridge_invariants(const Polytope& p, const CodimTwoData& g) {
    CHECK(g.k >= 1);
    CHECK(g.h >= 0);
    CHECK(g.h < g.k);
    Integer gg;
    mpz_gcd(gg.get_mpz_t(), g.h.get_mpz_t(), g.k.get_mpz_t());
    CHECK(gg == 1);
    if (g.k > 1) {
        Integer r = Integer(g.h * g.h_inv) % g.k;
        CHECK(r == 1);
    }
    CHECK(g.dual.contains(g.v_F1_G));
    CHECK(g.dual.contains(g.v_F2_G));
    CHECK(g.dual.contains(g.v2));
    // the cone edges are orthogonal to the opposite facet normal
    CHECK(dot(g.v_F1_G, to_rational(g.v_F1)).is_zero());
    CHECK(dot(g.v_F2_G, to_rational(g.v_F2)).is_zero());
    // the dual basis (v_F1_G, v2) spans the same lattice
    RatMatrix b = RatMatrix::from_columns({g.v_F1_G, g.v2}, p.dim());
    CHECK(determinant(gram(b)) == g.dual.gram_det());
    // the projected lattice and its orthogonal integer lattice are dual
    CHECK(g.dual.gram_det() * g.lattice_gram_det == 1);
    CHECK(g.dot1 == Rational(g.k) * g.x2);
    CHECK(g.dot2 == Rational(g.k) * g.x1);
    CHECK(g.xbar == Rational(g.x1) * g.v_F1_G + g.x2 * g.v_F2_G);
    RatVector v1 = to_rational(g.v_F1), v2 = to_rational(g.v_F2);
    CHECK(dot(g.v_F1_G, v2) == Rational(g.k));
    CHECK(dot(g.v_F2_G, v1) == Rational(g.k));
    Rational normal_gram = norm_sq(v1) * norm_sq(v2) - pow(dot(v1, v2), 2);
    CHECK(Rational(Integer(g.k * g.k)) == normal_gram / g.lattice_gram_det);
    CHECK(norm_sq(v2) == g.lattice_gram_det * norm_sq(g.v_F2_G));
    CHECK(g.v_F2_G == Rational(g.h) * g.v_F1_G + Rational(g.k) * g.v2);
    CHECK(g.c_G.cos_squared == pow(dot(v1, v2), 2) / (norm_sq(v1) * norm_sq(v2)));
    CHECK(g.c_G.sign == -dot(v1, v2).sign());
}

}  // namespace

TEST_CASE("local data of the standard simplex") {
    Polytope p = fixtures::simplex();
    LocalData ld = local_data(p);
    REQUIRE(ld.facets.size() == 4);
    REQUIRE(ld.ridges.size() == 6);
    for (auto& f : ld.facets) CHECK(f.vol_star == Rational(1, 2));
    int right = 0, slanted = 0;
    for (auto& g : ld.ridges) {
        check_ridge_invariants(p, g);
        CHECK(g.vol_star == 1);
        CHECK(g.k == 1);
        if (g.c_G == AngleValue{0, Rational(0)}) {
            ++right;
        } else {
            CHECK(g.c_G == AngleValue{1, Rational(1, 3)});
            ++slanted;
        }
    }
    CHECK(right == 3);
    CHECK(slanted == 3);
}

TEST_CASE("cone edge vectors on a slanted edge") {
    Polytope p = fixtures::simplex();
    // edge between x1 = 0 and x1 + x2 + x3 = 1
    std::vector<Face> ridges = p.faces_of_codim(2);
    const Face* e = nullptr;
    for (auto& g : ridges)
        if (g.facets() == std::vector<std::size_t>{0, 3}) e = &g;
    REQUIRE(e != nullptr);
    CodimTwoData c = codim2_data(p, *e);
    CHECK(c.v_F1 == IntVector{-1, 0, 0});
    CHECK(c.v_F2 == IntVector{1, 1, 1});
    CHECK(c.v_F1_G == RatVector{0, Rational(1, 2), Rational(1, 2)});
    CHECK(c.v_F2_G == RatVector{-1, Rational(1, 2), Rational(1, 2)});
    CHECK(c.k == 1);
    CodimTwoData s = codim2_data(p, *e, true);
    CHECK(s.v_F1 == IntVector{1, 1, 1});
    CHECK(s.v_F1_G == c.v_F2_G);
}

TEST_CASE("edge data of the standard simplex") {
    Polytope p = fixtures::simplex();
    for (auto& g : local_data(p).ridges) {
        if (p.inequalities()[g.f2].a == IntVector{1, 1, 1} || p.inequalities()[g.f1].a == IntVector{1, 1, 1}) {
            if (g.x1 + g.x2 == 0) continue;
            // the edge on the slanted facet away from the origin
            CHECK(g.h == 0);
            CHECK(g.k == 1);
            CHECK(g.x1 == 1);
            CHECK(g.x2 == 0);
            CHECK(g.lattice_gram_det == 2);
            CHECK(g.c_G == AngleValue{1, Rational(1, 3)});
        } else {
            CHECK(g.h == 0);
            CHECK(g.k == 1);
            CHECK(g.x1 == 0);
            CHECK(g.x2 == 0);
            CHECK(g.omega() == ExactValue(Rational(1, 4)));
        }
    }
}

TEST_CASE("facet data goldens") {
    Polytope s = fixtures::simplex();
    FacetData f4 = facet_data(s, 3);
    CHECK(f4.v_F == IntVector{1, 1, 1});
    CHECK(f4.x_F_dot == 1);
    CHECK(f4.vol_star == Rational(1, 2));
    CHECK(f4.norm_sq == 3);
    FacetData f1 = facet_data(s, 0);
    CHECK(f1.v_F == IntVector{-1, 0, 0});
    CHECK(f1.x_F_dot == 0);
    FacetData o3 = facet_data(fixtures::order_simplex(), 2);
    CHECK(o3.v_F == IntVector{-1, 1, 0});
    CHECK(o3.x_F_dot == 0);
}

TEST_CASE("codimension-two data of the order simplex") {
    Polytope p = fixtures::order_simplex();
    LocalData ld = local_data(p);
    REQUIRE(ld.ridges.size() == 6);
    int sixth = 0;
    for (auto& g : ld.ridges) {
        check_ridge_invariants(p, g);
        if (g.omega() == ExactValue(Rational(1, 6))) {
            // the edge where x3 = 0 meets x2 = x3
            CHECK(g.c_G == AngleValue{1, Rational(1, 4)});
            CHECK(g.h == 0);
            CHECK(g.k == 1);
            ++sixth;
        }
    }
    CHECK(sixth >= 1);
}

TEST_CASE("local data invariants on random rational polytopes") {
    std::mt19937_64 rng(77);
    for (int it = 0; it < 40; ++it) {
        Polytope p = fixtures::random_rational_hull(rng, 3, 6, 4, 3);
        LocalData ld = local_data(p, false, 2);
        CHECK(ld.facets.size() == p.inequalities().size());
        for (auto& g : ld.ridges) check_ridge_invariants(p, g);
        LocalData sw = local_data(p, true);
        for (std::size_t i = 0; i < ld.ridges.size(); ++i) {
            CHECK(sw.ridges[i].k == ld.ridges[i].k);
            CHECK(sw.ridges[i].f1 == ld.ridges[i].f2);
            CHECK(sw.ridges[i].omega() == ld.ridges[i].omega());
        }
    }
}

TEST_CASE("local data in dimension four") {
    std::mt19937_64 rng(78);
    for (int it = 0; it < 10; ++it) {
        Polytope p = fixtures::random_rational_hull(rng, 4, 6, 3, 2);
        for (auto& g : local_data(p).ridges) check_ridge_invariants(p, g);
    }
}

TEST_CASE("non-ridge faces are rejected") {
    Polytope p = fixtures::simplex();
    CHECK_THROWS_AS(codim2_data(p, p.faces_of_codim(1).front()), std::invalid_argument);
}
