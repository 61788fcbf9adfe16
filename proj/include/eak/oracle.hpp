#pragma once

#include "eak/exact.hpp"
#include "eak/polytope.hpp"

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace eak {

struct OracleOptions {
    std::uint64_t budget = 10'000'000;  // candidate lattice points per scan
    unsigned threads = 1;
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t seed = 0x5eed;
};

// Exact part plus a Monte Carlo part (4-D vertex cones only).
struct SolidAngleValue {
    ExactValue exact;
    double mc = 0;
    double mc_std_error = 0;
    bool has_mc = false;

    double numeric() const { return eval_numeric(exact) + mc; }
    SolidAngleValue& operator+=(const SolidAngleValue& o);
    SolidAngleValue& operator*=(const Rational& s);
};

enum class Locus { outside, interior, facet, codim2, vertex, deeper };

struct AngleAtPoint {
    Locus locus = Locus::outside;
    int codim = -1;
    SolidAngleValue value;
};

// Solid angle of P at each of its faces, in the order of Polytope::faces().
std::vector<SolidAngleValue> face_angles(const Polytope& p, const OracleOptions& opts = {});

Integer count_points(const Polytope& p, const Rational& t, const OracleOptions& opts = {});
AngleAtPoint solid_angle_at(const Polytope& p, const RatVector& x, const OracleOptions& opts = {});
SolidAngleValue solid_angle_sum(const Polytope& p, const Rational& t, const OracleOptions& opts = {});
// Number of lattice points of tP per tight set (i.e. per face whose relative interior
// contains them).
std::vector<std::pair<TightSet, std::uint64_t>> classify_points(const Polytope& p, const Rational& t,
                                                               const OracleOptions& opts = {});

// Sum over faces F of omega_P(F) times the lattice points in the relative interior of tF,
// counted face by face.
SolidAngleValue face_angle_cross_check(const Polytope& p, const Rational& t,
                                      const OracleOptions& opts = {});

// Coefficients c_k (c[k] multiplies t^k) of the degree-d polynomial through the samples.
std::vector<ExactValue> interpolate_coefficients(
    const std::vector<std::pair<Rational, ExactValue>>& samples, std::size_t degree);
std::vector<SolidAngleValue> interpolate_coefficients(
    const std::vector<std::pair<Rational, SolidAngleValue>>& samples, std::size_t degree);

// Quasi-coefficients at t from samples at t, t+m, ..., t+dm (m = denominator).
std::vector<Rational> ehrhart_coefficients_at(const Polytope& p, const Rational& t,
                                              const OracleOptions& opts = {});
std::vector<SolidAngleValue> solid_angle_coefficients_at(const Polytope& p, const Rational& t,
                                                         const OracleOptions& opts = {});

}  // namespace eak
