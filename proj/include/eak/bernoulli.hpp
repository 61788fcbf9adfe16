#pragma once

#include "eak/exact.hpp"

namespace eak {

inline constexpr int kMaxBernoulliDegree = 16;

enum class Side { plus, minus };

// B_r(x), the Bernoulli polynomial (not periodized).
Rational bernoulli_poly(int r, const Rational& x);
// Bernoulli number B_r = B_r(0).
Rational bernoulli_number(int r);
// B_r(frac x); for r = 1 the value at integers is 0.
Rational periodized(int r, const Rational& x);
// One-sided limits of the periodized B_1: -1/2 (plus) or 1/2 (minus) at integers.
Rational one_sided_B1(const Rational& x, Side side);
// B_r(x) on [0,1], 0 outside.
Rational bernoulli_truncated(int r, const Rational& x);
// 1 if x is an integer, else 0.
Rational indicator_Z(const Rational& x);

}  // namespace eak
