#pragma once

#include "eak/exact.hpp"

namespace eak {

struct DRArgs {
    Integer h;
    Integer k;
    Rational x;
    Rational y;
};

// s(h,k;x,y) = sum_{r mod k} B1bar(h(r+y)/k + x) B1bar((r+y)/k).
Rational dr_sum_direct(const DRArgs& a);
// Same value through reciprocity / periodicity descent; any h >= 0 coprime to k.
Rational dr_sum_fast(const DRArgs& a);
Rational dedekind_classic(const Integer& h, const Integer& k);

// Right-hand side of the reciprocity law:
// s(h,k;x,y) + s(k,h;y,x) = reciprocity_rhs(h,k,x,y), h,k >= 1.
Rational reciprocity_rhs(const Integer& h, const Integer& k, const Rational& x,
                         const Rational& y);

// Direct summation is used at or below this modulus.
inline constexpr long kDirectSumCutoff = 64;

}  // namespace eak
