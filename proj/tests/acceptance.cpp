// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "eak/coefficients.hpp"
#include "eak/concrete.hpp"
#include "eak/dedekind.hpp"
#include "eak/lattice_sum.hpp"
#include "eak/oracle.hpp"

#include "fixtures.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace eak;

namespace {

// Pinned limits.
constexpr double kTimeLimitSimplexGoldens = 1.0;    // criterion 1, seconds
constexpr double kTimeLimitReciprocity = 5.0;       // criterion 5
constexpr double kTimeLimitConcreteness = 30.0;     // criterion 11
constexpr double kSeriesTolerance = 1e-3;           // criterion 10 (iii)

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures; the first few are reported.
struct Checker {
    int checks = 0, failures = 0;
    std::ostringstream first;

    void operator()(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        if (failures++ < 3) first << (failures > 1 ? "; " : "") << what;
    }
    Outcome outcome(const std::string& summary) const {
        if (failures == 0) return {true, summary + ", " + std::to_string(checks) + " checks"};
        return {false, std::to_string(failures) + "/" + std::to_string(checks) + " failed: " + first.str()};
    }
};

// Periodized Bernoulli functions, written out independently of the library.
Rational frac(const Rational& x) { return x - Rational(x.floor()); }
Rational b1bar(const Rational& x) { return x.is_integer() ? Rational(0) : frac(x) - Rational(1, 2); }
Rational b1plus(const Rational& x) { return frac(x) - Rational(1, 2); }
Rational b2bar(const Rational& x) {
    Rational f = frac(x);
    return f * f - f + Rational(1, 6);
}
Rational indicator_z(const Rational& x) { return x.is_integer() ? Rational(1) : Rational(0); }

// s(h,k;x,y) by its defining sum.
Rational dr_sum_definition(long h, long k, const Rational& x, const Rational& y) {
    Rational s;
    for (long r = 0; r < k; ++r) {
        Rational u = (Rational(r) + y) / Rational(k);
        s += b1bar(Rational(h) * u + x) * b1bar(u);
    }
    return s;
}

std::string str(const Rational& r) { return r.str(); }

const std::vector<Rational> kGoldenT = {Rational(1, 3), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2),
                                        Rational(7, 5)};

Outcome simplex_ehrhart_goldens() {
    Checker check;
    Polytope delta = fixtures::simplex();
    auto e1 = coeff_e_d1(delta), e2 = coeff_e_d2(delta);
    for (auto& t : kGoldenT) {
        Rational want1 = Rational(-1, 2) * b1plus(t) + Rational(3, 4);
        Rational want2 = Rational(1, 2) * b2bar(t) - Rational(3, 2) * b1plus(t) + Rational(1);
        check(e1.eval(t) == ExactValue(want1), "e_2(" + str(t) + ")");
        check(e2.eval(t) == ExactValue(want2), "e_1(" + str(t) + ")");
    }
    return check.outcome("6 values of t");
}

Outcome simplex_solid_angle_goldens() {
    Checker check;
    Polytope delta = fixtures::simplex();
    auto a1 = coeff_a_d1(delta), a2 = coeff_a_d2(delta);
    for (auto& t : kGoldenT) check(a1.eval(t) == ExactValue(Rational(-1, 2) * b1bar(t)), "a_2(" + str(t) + ")");
    ExactValue at_one(Rational(-5, 12), {{Rational(3), AngleValue{1, Rational(1, 3)}}});
    check(a2.eval(Rational(1)) == at_one, "a_1(1) = " + a2.eval(Rational(1)).str());
    check(a2.eval(Rational(1, 2)) == ExactValue(Rational(5, 24)), "a_1(1/2)");
    return check.outcome("a_1(1) = " + at_one.str());
}

Outcome order_simplex_goldens() {
    Checker check;
    Polytope order = fixtures::order_simplex();
    auto a2 = coeff_a_d2(order);
    for (Rational t : {Rational(1, 4), Rational(1, 2), Rational(1), Rational(2)}) {
        Rational want = Rational(1, 2) * b2bar(t) - Rational(1, 8) * indicator_z(t) + Rational(1, 24);
        check(a2.eval(t) == ExactValue(want), "a_1(" + str(t) + ")");
    }
    auto qp = complete_quasipolynomial_d3(order, Flavor::solid_angle);
    for (long t = 1; t <= 6; ++t)
        check(qp.value(Rational(t)) == ExactValue(pow(Rational(t), 3) / Rational(6)), "A(" + std::to_string(t) + ")");
    return check.outcome("4 coefficient values, A(t) for t = 1..6");
}

Outcome unimodular_counts() {
    Checker check;
    std::mt19937_64 rng(401);
    Polytope delta = fixtures::simplex(), order = fixtures::order_simplex();
    for (int i = 0; i < 50; ++i) {
        Rational t = fixtures::random_t(rng, 4, 7);
        Integer n = count_points(delta, t);
        // binomial(floor(t) + 3, 3)
        Integer f = t.floor();
        Integer direct = (f + 1) * (f + 2) * (f + 3) / 6;
        check(n == count_points(order, t), "t = " + str(t));
        check(n == direct, "simplex count at t = " + str(t));
    }
    return check.outcome("50 random t in (0,4]");
}

Outcome reciprocity() {
    Checker check;
    std::mt19937_64 rng(501);
    int done = 0;
    while (done < 200) {
        long k = std::uniform_int_distribution<long>(2, 100)(rng);
        long h = std::uniform_int_distribution<long>(1, k - 1)(rng);
        if (std::gcd(h, k) != 1) continue;
        auto rnd = [&] {
            long q = std::uniform_int_distribution<long>(1, 12)(rng);
            long p = std::uniform_int_distribution<long>(-3 * q, 3 * q)(rng);
            return Rational(Integer(p), Integer(q));
        };
        Rational x = rnd(), y = rnd();
        Rational s_hk = dr_sum_definition(h, k, x, y), s_kh = dr_sum_definition(k, h, y, x);
        std::string at = "(" + std::to_string(h) + "," + std::to_string(k) + ";" + str(x) + "," + str(y) + ")";
        check(s_hk + s_kh == reciprocity_rhs(Integer(h), Integer(k), x, y), "reciprocity at " + at);
        check(dr_sum_fast({Integer(h), Integer(k), x, y}) == dr_sum_direct({Integer(h), Integer(k), x, y}),
              "fast vs direct at " + at);
        check(dr_sum_direct({Integer(h), Integer(k), x, y}) == s_hk, "direct vs definition at " + at);
        ++done;
    }
    return check.outcome("200 coprime pairs");
}

Outcome ridge_identities() {
    Checker check;
    std::mt19937_64 rng(601);
    int ridges = 0;
    for (int i = 0; i < 100; ++i) {
        std::size_t points = 6 + rng() % 5;
        Polytope p = fixtures::random_rational_hull(rng, 3, points, 4, 3);
        for (auto& g : local_data(p).ridges) {
            RatVector v1 = to_rational(g.v_F1), v2 = to_rational(g.v_F2);
            Rational k(g.k);
            check(dot(g.v_F1_G, v2) == k, "<v_F1_G, v_F2> = k at " + tight_label(g.tight_set));
            check(dot(g.v_F2_G, v1) == k, "<v_F2_G, v_F1> = k at " + tight_label(g.tight_set));
            // det Gram(v_F1, v_F2) = k^2 det(Lambda_G)^2
            Rational normal_gram = norm_sq(v1) * norm_sq(v2) - pow(dot(v1, v2), 2);
            check(normal_gram == k * k * g.lattice_gram_det, "squared determinant at " + tight_label(g.tight_set));
            ++ridges;
        }
    }
    return check.outcome("100 polytopes, " + std::to_string(ridges) + " ridges");
}

Outcome tetrahedra() {
    Checker check;
    std::mt19937_64 rng(701);
    for (int i = 0; i < 50; ++i) {
        Polytope p = fixtures::random_integer_tetrahedron(rng, 3);
        Rational v = tetrahedron_identity(p);
        check(v.is_zero(), "tetrahedron " + std::to_string(i) + " gives " + str(v));
    }
    return check.outcome("50 tetrahedra");
}

std::vector<Polytope> integer_polytopes(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<Polytope> out;
    for (int i = 0; i < count; ++i) out.push_back(fixtures::random_integer_hull(rng, 3, 5 + rng() % 3, 2));
    return out;
}

Outcome ehrhart_oracle() {
    Checker check;
    std::mt19937_64 rng(801);
    for (auto& p : integer_polytopes(800, 25)) {
        auto e1 = coeff_e_d1(p), e2 = coeff_e_d2(p);
        for (int j = 0; j < 5; ++j) {
            Rational t = fixtures::random_t(rng, 2, 5);
            auto c = ehrhart_coefficients_at(p, t);
            check(ExactValue(c[2]) == e1.eval(t), "e_2 at t = " + str(t));
            check(ExactValue(c[1]) == e2.eval(t), "e_1 at t = " + str(t));
        }
    }
    return check.outcome("25 polytopes x 5 t");
}

Outcome solid_angle_oracle() {
    Checker check;
    std::mt19937_64 rng(801);
    for (auto& p : integer_polytopes(800, 25)) {
        auto a1 = coeff_a_d1(p), a2 = coeff_a_d2(p);
        for (int j = 0; j < 5; ++j) {
            Rational t = fixtures::random_t(rng, 2, 5);
            auto c = solid_angle_coefficients_at(p, t);
            check(c[2].exact == a1.eval(t) && !c[2].has_mc, "a_2 at t = " + str(t));
            check(c[1].exact == a2.eval(t) && !c[1].has_mc,
                  "a_1 at t = " + str(t) + ": " + c[1].exact.str() + " vs " + a2.eval(t).str());
        }
    }
    return check.outcome("25 polytopes x 5 t");
}

Outcome lattice_sums() {
    Checker check;
    std::mt19937_64 rng(1001);
    auto random_coordinate = [&] { return fixtures::random_coordinate(rng, 6, 4); };

    // (i) e_j in {2,3}: solid-angle finite form against the residue form
    for (int i = 0; i < 50; ++i) {
        std::size_t d = 1 + i % 2;
        RatMatrix w(d, d);
        do {
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) w(r, c) = Rational(long(rng() % 7) - 3);
        } while (determinant(w).is_zero());
        std::vector<int> e(d);
        for (auto& x : e) x = 2 + int(rng() % 2);
        RatVector x(d);
        if (i % 5) for (auto& c : x) c = random_coordinate();
        LatticeSumProblem p{EmbeddedLattice(RatMatrix::identity(d)), w, e, x};
        check(lattice_sum_finite(p) == ExactValue(lattice_sum_residue_form(w, e, x)), "residue form, problem " + std::to_string(i));
    }

    // (ii) e = (1,1) ridge problems: index * finite form = boundary term - s(h,k;...)
    std::vector<LatticeSumProblem> ridge_problems;
    int done = 0;
    while (done < 20) {
        Polytope poly = fixtures::random_rational_hull(rng, 3, 6, 4, 3);
        for (auto& g : local_data(poly).ridges) {
            if (done == 20) break;
            Rational t = done % 4 == 0 ? Rational(poly.denominator()) : fixtures::random_t(rng, 3, 4);
            LatticeSumProblem p = ridge_problem(g, t);
            ExactValue boundary = g.xbar_in_dual(t) ? g.omega() - ExactValue(Rational(1, 4)) : ExactValue();
            Rational h(g.h), k(g.k);
            Rational dr = dr_sum_definition(g.h.get_si(), g.k.get_si(), (g.x1 + h * g.x2) * t, -k * g.x2 * t);
            check(lattice_sum_finite(p) * k == boundary - ExactValue(dr), "ridge problem " + std::to_string(done));
            if (ridge_problems.size() < 4) ridge_problems.push_back(p);
            ++done;
        }
    }

    // (iii) Gaussian-regularized series, extrapolated to eps = 0
    LatticeSumProblem convergent{EmbeddedLattice(RatMatrix::identity(2)), RatMatrix::from_rows({{2, 1}, {0, 1}}),
                                 {2, 2}, {Rational(1, 3), Rational(1, 5)}};
    ridge_problems.push_back(convergent);
    double worst = 0;
    for (auto& p : ridge_problems) {
        double exact = eval_numeric(lattice_sum_finite(p));
        double ext = lattice_sum_extrapolated(p, kSeriesEpsilons, kSeriesRadius);
        worst = std::max(worst, std::abs(ext - exact));
        check(std::abs(ext - exact) < kSeriesTolerance, "series differs by " + std::to_string(std::abs(ext - exact)));
    }
    std::ostringstream os;
    os << "50 residue, 20 ridge, " << ridge_problems.size() << " series (max diff " << std::setprecision(2) << worst
       << ")";
    return check.outcome(os.str());
}

Outcome concreteness() {
    Checker check;
    Polytope cube = fixtures::cube(3), prism = fixtures::hexagonal_prism();
    for (auto* p : {&cube, &prism}) {
        std::string name = p == &cube ? "cube" : "hexagonal prism";
        check(centrally_symmetric_facets(*p), name + ": facets not symmetric");
        check(is_concrete(*p, 4).concrete, name + ": not concrete");
    }
    Polytope order = fixtures::order_simplex();
    check(is_concrete(order, 6).concrete, "order simplex not concrete");
    check(is_concrete(order.scaled(Rational(1, 2)), 6).concrete, "half order simplex not concrete");

    Polytope delta = fixtures::simplex();
    ConcreteReport r = is_concrete(delta, 2);
    ExactValue defect(Rational(-5, 12), {{Rational(3), AngleValue{1, Rational(1, 3)}}});
    check(!r.concrete && r.first_failure == 1L && r.defect == defect, "simplex defect " + r.defect.str());

    TilingReport order_tiling = symmetrized_multitiling_level(order);
    check(order_tiling.constant, "order simplex multiplicity not constant");
    check(!symmetrized_multitiling_level(delta).constant, "simplex multiplicity constant");
    return check.outcome("order simplex level " + std::to_string(order_tiling.level));
}

Outcome recovery_chain() {
    Checker check;
    std::mt19937_64 rng(1201);
    for (auto& p : integer_polytopes(1200, 10)) {
        auto a1 = coeff_a_d1(p);
        for (int j = 0; j < 50; ++j) {
            Rational t = fixtures::random_t(rng, 3, 9);
            check(ExactValue(recover_a_d1_from_e(p, t)) == a1.eval(t), "recovered a_2 at t = " + str(t));
        }
        for (long t : {1L, 2L})
            check(face_angle_cross_check(p, Rational(t)).exact == solid_angle_sum(p, Rational(t)).exact,
                  "face-angle cross-check at t = " + std::to_string(t));
    }
    return check.outcome("10 polytopes x 50 t, t = 1, 2");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        std::function<Outcome()> run;
        double time_limit = 0;  // seconds; 0 = none
    };
    std::vector<Criterion> criteria = {
        {1, "standard simplex Ehrhart coefficients equal their closed forms", simplex_ehrhart_goldens,
         kTimeLimitSimplexGoldens},
        {2, "standard simplex solid-angle coefficients equal their closed forms", simplex_solid_angle_goldens},
        {3, "order simplex a_1 closed form and A(t) = t^3/6", order_simplex_goldens},
        {4, "standard and order simplex have equal lattice-point counts", unimodular_counts},
        {5, "Dedekind-Rademacher reciprocity and fast evaluation", reciprocity, kTimeLimitReciprocity},
        {6, "ridge lattice identities on random rational polytopes", ridge_identities},
        {7, "edge identity vanishes on random integer tetrahedra", tetrahedra},
        {8, "Ehrhart coefficients match interpolated lattice counts", ehrhart_oracle},
        {9, "solid-angle coefficients match interpolated angle sums", solid_angle_oracle},
        {10, "lattice sums: residue form, ridge split, series oracle", lattice_sums},
        {11, "concreteness and symmetrized multi-tiling suite", concreteness, kTimeLimitConcreteness},
        {12, "a_2 rebuilt from Ehrhart data; face-weighted angle sums", recovery_chain},
    };

    int failed = 0;
    for (auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0 && secs >= c.time_limit) {
            o.pass = false;
            o.detail += "; exceeded " + std::to_string(c.time_limit) + " s";
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.name << "  ["
                  << o.detail << ", " << std::fixed << std::setprecision(2) << secs << " s]\n"
                  << std::defaultfloat << std::flush;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
