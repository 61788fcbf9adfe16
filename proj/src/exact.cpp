#include "eak/exact.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace eak {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

static bool all_digits(const std::string& s, std::size_t from) {
    if (from >= s.size()) return false;
    for (std::size_t i = from; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    std::string n = s.substr(0, slash);
    std::size_t start = (!n.empty() && (n[0] == '-' || n[0] == '+')) ? 1 : 0;
    if (!all_digits(n, start)) throw std::invalid_argument("not a rational: '" + s + "'");
    Integer num(n[0] == '+' ? n.substr(1) : n);
    if (slash == std::string::npos) return Rational(num);
    std::string d = s.substr(slash + 1);
    if (!all_digits(d, 0)) throw std::invalid_argument("not a rational: '" + s + "'");
    Integer den(d);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    return Rational(num, den);
}

Integer Rational::floor() const {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

Integer Rational::ceil() const {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

std::string Rational::str() const { return q_.get_str(); }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, unsigned e) {
    Rational r(1);
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

bool is_integer(const Rational& r) { return r.is_integer(); }

RatVector to_rational(const IntVector& v) {
    RatVector r;
    r.reserve(v.size());
    for (auto& x : v) r.emplace_back(x);
    return r;
}

Rational dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch in dot");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational norm_sq(const RatVector& a) { return dot(a, a); }

RatVector operator+(const RatVector& a, const RatVector& b) {
    RatVector r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
    RatVector r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

RatVector operator*(const Rational& s, const RatVector& a) {
    RatVector r(a);
    for (auto& x : r) x *= s;
    return r;
}

bool is_zero(const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

std::string to_string(const RatVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
}

std::string to_string(const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

IntVector primitive_integer_vector(const RatVector& v) {
    if (is_zero(v)) throw std::invalid_argument("zero direction");
    Integer l = 1;
    for (auto& x : v) l = lcm(l, x.den());
    IntVector w(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = v[i].num() * (l / v[i].den());
        g = gcd(g, w[i]);
    }
    for (auto& x : w) x /= g;
    return w;
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVector>& cols, std::size_t rows) {
    RatMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    RatMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("row length mismatch");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RatVector RatMatrix::column(std::size_t j) const {
    RatVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

RatVector RatMatrix::row(std::size_t i) const {
    return RatVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

std::vector<RatVector> RatMatrix::columns() const {
    std::vector<RatVector> c;
    for (std::size_t j = 0; j < cols_; ++j) c.push_back(column(j));
    return c;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
        }
    return c;
}

RatVector operator*(const RatMatrix& a, const RatVector& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    RatVector r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m, int* swaps = nullptr, Rational* det = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    if (det) *det = 1;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
            if (swaps) ++*swaps;
        }
        Rational piv = m(r, c);
        if (det) *det *= piv;
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) /= piv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Rational determinant(RatMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    int swaps = 0;
    Rational det;
    auto piv = rref(m, &swaps, &det);
    if (piv.size() < m.rows()) return Rational(0);
    return swaps % 2 ? -det : det;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

RatMatrix inverse(const RatMatrix& m) {
    std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

RatVector solve(const RatMatrix& m, const RatVector& b) { return inverse(m) * b; }

std::vector<RatVector> nullspace(const RatMatrix& m) {
    RatMatrix r = m;
    auto piv = rref(r);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        RatVector v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
        basis.push_back(v);
    }
    return basis;
}

RatMatrix gram(const RatMatrix& b) { return b.transpose() * b; }

bool coordinates_in_span(const RatMatrix& b, const RatVector& v, RatVector& c) {
    RatMatrix bt = b.transpose();
    c = solve(bt * b, bt * v);
    return b * c == v;
}

AngleValue angle_of_cos_ratio(const Rational& num, const Rational& den_sq) {
    if (den_sq.sign() <= 0) throw std::invalid_argument("den_sq must be positive");
    Rational c2 = num * num / den_sq;
    if (c2 > Rational(1)) throw std::invalid_argument("not a cosine");
    return AngleValue{num.sign(), c2};
}

std::string to_string(const AngleValue& a) {
    const char* s = a.sign > 0 ? "+" : (a.sign < 0 ? "-" : "0");
    return std::string("acos(") + s + "sqrt(" + a.cos_squared.str() + "))";
}

ExactValue::ExactValue(const Rational& r, std::vector<AngleTerm> terms)
    : rational_(r), terms_(std::move(terms)) {
    canonicalize();
}

ExactValue ExactValue::omega(const AngleValue& angle) {
    return ExactValue(Rational(0), {AngleTerm{Rational(1), angle}});
}

namespace {

// arccos(sqrt(c2))/(2 pi) for the rational-angle cases; false if not one of them.
bool rational_omega(const Rational& c2, Rational& out) {
    static const std::pair<Rational, Rational> table[] = {
        {Rational(0), Rational(1, 4)},     {Rational(1, 4), Rational(1, 6)},
        {Rational(1, 2), Rational(1, 8)},  {Rational(3, 4), Rational(1, 12)},
        {Rational(1), Rational(0)},
    };
    for (auto& [c, w] : table)
        if (c == c2) {
            out = w;
            return true;
        }
    return false;
}

}  // namespace

void ExactValue::canonicalize() {
    std::vector<AngleTerm> folded;
    for (auto t : terms_) {
        if (t.coeff.is_zero()) continue;
        if (t.angle.cos_squared.sign() < 0 || t.angle.cos_squared > Rational(1))
            throw std::invalid_argument("not a cosine");
        Rational w;
        bool neg = t.angle.sign < 0;
        if (rational_omega(t.angle.cos_squared, w)) {
            rational_ += t.coeff * (neg ? Rational(1, 2) - w : w);
            continue;
        }
        if (neg) {
            rational_ += t.coeff * Rational(1, 2);
            t.coeff = -t.coeff;
        }
        t.angle.sign = 1;
        // arccos(sqrt(c)) = pi/2 - arccos(sqrt(1 - c))
        if (t.angle.cos_squared > Rational(1, 2)) {
            rational_ += t.coeff * Rational(1, 4);
            t.coeff = -t.coeff;
            t.angle.cos_squared = Rational(1) - t.angle.cos_squared;
        }
        folded.push_back(t);
    }
    std::sort(folded.begin(), folded.end(),
              [](const AngleTerm& a, const AngleTerm& b) { return a.angle < b.angle; });
    terms_.clear();
    for (auto& t : folded) {
        if (!terms_.empty() && terms_.back().angle == t.angle)
            terms_.back().coeff += t.coeff;
        else
            terms_.push_back(t);
    }
    std::erase_if(terms_, [](const AngleTerm& t) { return t.coeff.is_zero(); });
}

ExactValue ExactValue::operator-() const {
    ExactValue r = *this;
    r.rational_ = -r.rational_;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

ExactValue& ExactValue::operator+=(const ExactValue& o) {
    rational_ += o.rational_;
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    canonicalize();
    return *this;
}

ExactValue& ExactValue::operator-=(const ExactValue& o) { return *this += -o; }

ExactValue& ExactValue::operator*=(const Rational& s) {
    rational_ *= s;
    for (auto& t : terms_) t.coeff *= s;
    canonicalize();
    return *this;
}

std::string ExactValue::str() const {
    std::string s = rational_.str();
    for (auto& t : terms_) s += " + " + t.coeff.str() + "*" + to_string(t.angle) + "/(2pi)";
    return s;
}

std::ostream& operator<<(std::ostream& os, const ExactValue& v) { return os << v.str(); }

namespace {

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
    ~BigFloat() { mpfr_clear(x_); }
    BigFloat(const BigFloat&) = delete;
    BigFloat& operator=(const BigFloat&) = delete;
    mpfr_ptr get() { return x_; }

private:
    mpfr_t x_;
};

void evaluate(const ExactValue& x, mpfr_prec_t prec, BigFloat& out) {
    mpfr_set_q(out.get(), x.rational_part().raw().get_mpq_t(), MPFR_RNDN);
    if (x.angle_terms().empty()) return;
    BigFloat twopi(prec), a(prec), c(prec);
    mpfr_const_pi(twopi.get(), MPFR_RNDN);
    mpfr_mul_ui(twopi.get(), twopi.get(), 2, MPFR_RNDN);
    for (auto& t : x.angle_terms()) {
        mpfr_set_q(a.get(), t.angle.cos_squared.raw().get_mpq_t(), MPFR_RNDN);
        mpfr_sqrt(a.get(), a.get(), MPFR_RNDN);
        if (t.angle.sign < 0) mpfr_neg(a.get(), a.get(), MPFR_RNDN);
        mpfr_acos(a.get(), a.get(), MPFR_RNDN);
        mpfr_div(a.get(), a.get(), twopi.get(), MPFR_RNDN);
        mpfr_set_q(c.get(), t.coeff.raw().get_mpq_t(), MPFR_RNDN);
        mpfr_mul(a.get(), a.get(), c.get(), MPFR_RNDN);
        mpfr_add(out.get(), out.get(), a.get(), MPFR_RNDN);
    }
}

}  // namespace

double eval_numeric(const ExactValue& x, unsigned precision) {
    if (precision < 53) precision = 53;
    BigFloat v(precision + 32);
    evaluate(x, precision + 32, v);
    BigFloat r(precision);
    mpfr_set(r.get(), v.get(), MPFR_RNDN);
    return mpfr_get_d(r.get(), MPFR_RNDN);
}

std::string eval_decimal(const ExactValue& x, unsigned precision, int digits) {
    if (precision < 53) precision = 53;
    BigFloat v(precision + 32);
    evaluate(x, precision + 32, v);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v.get());
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

double angle_radians(const AngleValue& a) {
    return 2 * 3.14159265358979323846 * eval_numeric(ExactValue::omega(a));
}

}  // namespace eak
