#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace eak {

using Integer = mpz_class;

class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}
    Rational(int v) : q_(v) {}
    Rational(const Integer& v) : q_(v) {}
    Rational(const Integer& num, const Integer& den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Accepts "p", "-p", "p/q". Throws std::invalid_argument otherwise.
    static Rational parse(const std::string& s);

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    Integer floor() const;
    Integer ceil() const;
    Rational frac() const { return *this - Rational(floor()); }
    Rational abs() const { return sign() < 0 ? -*this : *this; }
    double to_double() const { return q_.get_d(); }
    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational pow(const Rational& base, unsigned e);
bool is_integer(const Rational& r);

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

RatVector to_rational(const IntVector& v);
Rational dot(const RatVector& a, const RatVector& b);
Rational norm_sq(const RatVector& a);
RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector operator*(const Rational& s, const RatVector& a);
bool is_zero(const RatVector& v);
std::string to_string(const RatVector& v);
std::string to_string(const IntVector& v);

// Unique primitive integer vector positively proportional to v.
IntVector primitive_integer_vector(const RatVector& v);

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static RatMatrix identity(std::size_t n);
    static RatMatrix from_columns(const std::vector<RatVector>& cols, std::size_t rows);
    static RatMatrix from_rows(const std::vector<RatVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatVector column(std::size_t j) const;
    RatVector row(std::size_t i) const;
    std::vector<RatVector> columns() const;
    RatMatrix transpose() const;

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatVector operator*(const RatMatrix& a, const RatVector& v);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

Rational determinant(RatMatrix m);
std::size_t rank(RatMatrix m);
// Throws std::domain_error when singular.
RatMatrix inverse(const RatMatrix& m);
// Solves m x = b for square nonsingular m.
RatVector solve(const RatMatrix& m, const RatVector& b);
// Basis of {x : m x = 0}.
std::vector<RatVector> nullspace(const RatMatrix& m);
RatMatrix gram(const RatMatrix& b);
// Coordinates c with B c = v when v lies in the column span of B (full column rank);
// returns false otherwise.
bool coordinates_in_span(const RatMatrix& b, const RatVector& v, RatVector& c);

// Angle theta = arccos(sign * sqrt(cos_squared)) in [0, pi].
struct AngleValue {
    int sign = 0;
    Rational cos_squared;

    friend bool operator==(const AngleValue&, const AngleValue&) = default;
    friend auto operator<=>(const AngleValue& a, const AngleValue& b) {
        if (a.sign != b.sign) return a.sign <=> b.sign;
        return a.cos_squared <=> b.cos_squared;
    }
};

AngleValue angle_of_cos_ratio(const Rational& num, const Rational& den_sq);
std::string to_string(const AngleValue& a);

struct AngleTerm {
    Rational coeff;
    AngleValue angle;
    friend bool operator==(const AngleTerm&, const AngleTerm&) = default;
};

// rational_part + sum coeff * arccos(angle) / (2 pi).
class ExactValue {
public:
    ExactValue() = default;
    ExactValue(const Rational& r) : rational_(r) {}
    ExactValue(int r) : rational_(r) {}
    ExactValue(const Rational& r, std::vector<AngleTerm> terms);
    // arccos(angle)/(2 pi) as an exact value.
    static ExactValue omega(const AngleValue& angle);

    const Rational& rational_part() const { return rational_; }
    const std::vector<AngleTerm>& angle_terms() const { return terms_; }
    bool is_rational() const { return terms_.empty(); }
    bool is_zero() const { return terms_.empty() && rational_.is_zero(); }

    ExactValue operator-() const;
    ExactValue& operator+=(const ExactValue& o);
    ExactValue& operator-=(const ExactValue& o);
    ExactValue& operator*=(const Rational& s);
    friend ExactValue operator+(ExactValue a, const ExactValue& b) { return a += b; }
    friend ExactValue operator-(ExactValue a, const ExactValue& b) { return a -= b; }
    friend ExactValue operator*(ExactValue a, const Rational& s) { return a *= s; }
    friend ExactValue operator*(const Rational& s, ExactValue a) { return a *= s; }
    friend bool operator==(const ExactValue&, const ExactValue&) = default;

    std::string str() const;

private:
    void canonicalize();
    Rational rational_;
    std::vector<AngleTerm> terms_;
};

std::ostream& operator<<(std::ostream& os, const ExactValue& v);

double eval_numeric(const ExactValue& x, unsigned precision = 53);
// Decimal rendering with the given number of significant digits.
std::string eval_decimal(const ExactValue& x, unsigned precision, int digits);
double angle_radians(const AngleValue& a);

}  // namespace eak
