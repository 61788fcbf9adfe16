#pragma once

#include "eak/polytope.hpp"

#include <random>
#include <stdexcept>

namespace eak::fixtures {

inline Polytope cube(std::size_t d) {
    std::vector<RatVector> vs;
    for (std::size_t m = 0; m < (std::size_t(1) << d); ++m) {
        RatVector v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = Rational(long(m >> i & 1));
        vs.push_back(v);
    }
    return Polytope::from_vertices(d, vs);
}

inline HRep simplex_hrep() {
    return HRep{3, {{{-1, 0, 0}, 0}, {{0, -1, 0}, 0}, {{0, 0, -1}, 0}, {{1, 1, 1}, 1}}};
}

// x3 >= 0, x3 <= x2, x2 <= x1, x1 <= 1
inline HRep order_simplex_hrep() {
    return HRep{3, {{{0, 0, -1}, 0}, {{0, -1, 1}, 0}, {{-1, 1, 0}, 0}, {{1, 0, 0}, 1}}};
}

inline Polytope simplex() { return Polytope::from_hrep(simplex_hrep()); }
inline Polytope order_simplex() { return Polytope::from_hrep(order_simplex_hrep()); }

inline Polytope hexagonal_prism() {
    std::vector<RatVector> hex = {{0, 0}, {1, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 1}};
    std::vector<RatVector> vs;
    for (auto& h : hex)
        for (long z = 0; z <= 1; ++z) vs.push_back({h[0], h[1], Rational(z)});
    return Polytope::from_vertices(3, vs);
}

inline Rational random_coordinate(std::mt19937_64& rng, long num, long den) {
    long n = std::uniform_int_distribution<long>(-num, num)(rng);
    long q = std::uniform_int_distribution<long>(1, den)(rng);
    return Rational(Integer(n), Integer(q));
}

// Hull of `points` random points with coordinates n/q, |n| <= num, 1 <= q <= den.
inline Polytope random_rational_hull(std::mt19937_64& rng, std::size_t d, std::size_t points,
                                     long num, long den) {
    for (;;) {
        std::vector<RatVector> pts;
        for (std::size_t i = 0; i < points; ++i) {
            RatVector v(d);
            for (auto& x : v) x = random_coordinate(rng, num, den);
            pts.push_back(v);
        }
        if (affine_rank(pts) < d) continue;
        return Polytope::from_vertices(d, pts);
    }
}

inline Polytope random_integer_hull(std::mt19937_64& rng, std::size_t d, std::size_t points,
                                    long range) {
    return random_rational_hull(rng, d, points, range, 1);
}

inline Polytope random_integer_tetrahedron(std::mt19937_64& rng, long range) {
    for (;;) {
        std::vector<RatVector> pts;
        for (int i = 0; i < 4; ++i) {
            RatVector v(3);
            for (auto& x : v) x = random_coordinate(rng, range, 1);
            pts.push_back(v);
        }
        if (affine_rank(pts) == 3) return Polytope::from_vertices(3, pts);
    }
}

inline RatMatrix random_unimodular(std::mt19937_64& rng, std::size_t d) {
    RatMatrix u = RatMatrix::identity(d);
    for (int s = 0; s < 6; ++s) {
        std::size_t i = rng() % d, j = rng() % d;
        if (i == j) continue;
        long f = long(rng() % 5) - 2;
        RatMatrix e = RatMatrix::identity(d);
        e(i, j) = Rational(f);
        u = e * u;
    }
    if (rng() % 2) {
        RatMatrix e = RatMatrix::identity(d);
        e(0, 0) = -1;
        u = e * u;
    }
    return u;
}

// Uniform rational in (0, hi] with denominator at most den.
inline Rational random_t(std::mt19937_64& rng, long hi, long den) {
    long q = std::uniform_int_distribution<long>(1, den)(rng);
    long p = std::uniform_int_distribution<long>(1, hi * q)(rng);
    return Rational(Integer(p), Integer(q));
}

}  // namespace eak::fixtures
