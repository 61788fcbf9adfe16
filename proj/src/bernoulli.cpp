#include "eak/bernoulli.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace eak {

namespace {

using Coefficients = std::array<std::vector<Rational>, kMaxBernoulliDegree + 1>;

Integer binomial(int n, int k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// coeffs[r][j] is the coefficient of x^j in B_r(x).
const Coefficients& coefficients() {
    static const Coefficients table = [] {
        std::array<Rational, kMaxBernoulliDegree + 1> b;
        b[0] = 1;
        for (int m = 1; m <= kMaxBernoulliDegree; ++m) {
            Rational s;
            for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * b[j];
            b[m] = -s / Rational(m + 1);
        }
        Coefficients c;
        for (int r = 0; r <= kMaxBernoulliDegree; ++r) {
            c[r].assign(r + 1, Rational(0));
            for (int k = 0; k <= r; ++k) c[r][r - k] = Rational(binomial(r, k)) * b[k];
        }
        return c;
    }();
    return table;
}

void check_degree(int r) {
    if (r < 0 || r > kMaxBernoulliDegree)
        throw std::out_of_range("Bernoulli degree " + std::to_string(r) + " outside [0," +
                                std::to_string(kMaxBernoulliDegree) + "]");
}

}  // namespace

Rational bernoulli_poly(int r, const Rational& x) {
    check_degree(r);
    const auto& c = coefficients()[r];
    Rational v;
    for (int j = r; j >= 0; --j) v = v * x + c[j];
    return v;
}

Rational bernoulli_number(int r) { return bernoulli_poly(r, Rational(0)); }

Rational periodized(int r, const Rational& x) {
    if (r < 1) throw std::invalid_argument("periodized Bernoulli needs r >= 1");
    if (r == 1 && x.is_integer()) return Rational(0);
    return bernoulli_poly(r, x.frac());
}

Rational one_sided_B1(const Rational& x, Side side) {
    if (x.is_integer()) return side == Side::plus ? Rational(-1, 2) : Rational(1, 2);
    return periodized(1, x);
}

Rational bernoulli_truncated(int r, const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) return Rational(0);
    return bernoulli_poly(r, x);
}

Rational indicator_Z(const Rational& x) { return x.is_integer() ? Rational(1) : Rational(0); }

}  // namespace eak
