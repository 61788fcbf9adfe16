#include "eak/dedekind.hpp"

#include "eak/bernoulli.hpp"

#include <stdexcept>

namespace eak {

namespace {

void check_args(const Integer& h, const Integer& k) {
    if (k <= 0) throw std::invalid_argument("k must be positive");
    if (h < 0) throw std::invalid_argument("h must be non-negative");
    if (gcd(h, k) != 1) throw std::invalid_argument("gcd(h,k) must be 1");
}

}  // namespace

Rational dr_sum_direct(const DRArgs& a) {
    check_args(a.h, a.k);
    Rational s;
    Rational kk(a.k), hh(a.h);
    for (Integer r = 0; r < a.k; ++r) {
        Rational u = (Rational(r) + a.y) / kk;
        s += periodized(1, hh * u + a.x) * periodized(1, u);
    }
    return s;
}

Rational reciprocity_rhs(const Integer& h, const Integer& k, const Rational& x,
                         const Rational& y) {
    Rational hh(h), kk(k);
    Rational v = Rational(-1, 4) * indicator_Z(x) * indicator_Z(y) + periodized(1, x) * periodized(1, y);
    v += Rational(1, 2) * (hh / kk * periodized(2, y) + periodized(2, kk * x + hh * y) / (hh * kk) +
                           kk / hh * periodized(2, x));
    return v;
}

Rational dr_sum_fast(const DRArgs& a) {
    check_args(a.h, a.k);
    Integer h = a.h, k = a.k;
    Rational x = a.x, y = a.y;
    Rational acc;
    int sign = 1;
    for (;;) {
        // s(h,k;x,y) = s(h - mk, k; x + my, y)
        if (h >= k) {
            Integer m = h / k;
            x += Rational(m) * y;
            h -= m * k;
        }
        if (k <= kDirectSumCutoff || h == 0) {
            acc += Rational(sign) * dr_sum_direct({h, k, x, y});
            return acc;
        }
        if (h == 1) {
            // s(k,1;y,x) has the single term B1bar(kx+y) B1bar(x).
            Rational s = reciprocity_rhs(1, k, x, y) - periodized(1, Rational(k) * x + y) * periodized(1, x);
            acc += Rational(sign) * s;
            return acc;
        }
        acc += Rational(sign) * reciprocity_rhs(h, k, x, y);
        sign = -sign;
        std::swap(h, k);
        std::swap(x, y);
    }
}

Rational dedekind_classic(const Integer& h, const Integer& k) {
    return dr_sum_direct({h, k, Rational(0), Rational(0)});
}

}  // namespace eak
