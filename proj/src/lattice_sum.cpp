#include "eak/lattice_sum.hpp"

#include "eak/bernoulli.hpp"
#include "eak/dedekind.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace eak {

namespace {

constexpr std::size_t kMaxNumericRank = 3;

// Pairings A = B^T W of the lattice basis with the columns of W.
RatMatrix pairing_matrix(const LatticeSumProblem& p) {
    return p.lattice.basis().transpose() * p.w;
}

Integer factorial(int n) {
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

struct ParallelepipedPoint {
    RatVector y;          // W^+(n - x) in [0,1]^k
    unsigned on_boundary; // bit j: y_j in {0,1}
    unsigned at_one;      // bit j: y_j = 1
};

// Dual-lattice points of the closed parallelepiped, in W-coordinates.
std::vector<ParallelepipedPoint> parallelepiped_points(const LatticeSumProblem& p) {
    std::size_t k = p.lattice.rank();
    RatMatrix a = pairing_matrix(p);
    RatMatrix a_inv = inverse(a);
    RatVector xi = p.lattice.basis().transpose() * p.x;

    std::vector<Integer> lo(k), hi(k);
    for (std::size_t i = 0; i < k; ++i) {
        Rational mn = xi[i], mx = xi[i];
        for (std::size_t j = 0; j < k; ++j) {
            if (a(i, j).sign() < 0) mn += a(i, j);
            else mx += a(i, j);
        }
        lo[i] = mn.ceil();
        hi[i] = mx.floor();
    }

    std::vector<ParallelepipedPoint> out;
    RatVector m(k);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            RatVector y = a_inv * (m - xi);
            ParallelepipedPoint pt{y, 0, 0};
            for (std::size_t j = 0; j < k; ++j) {
                if (y[j].sign() < 0 || y[j] > 1) return;
                if (y[j].is_zero()) pt.on_boundary |= 1u << j;
                if (y[j] == 1) pt.on_boundary |= 1u << j, pt.at_one |= 1u << j;
            }
            out.push_back(std::move(pt));
            return;
        }
        for (Integer v = lo[i]; v <= hi[i]; ++v) {
            m[i] = Rational(v);
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

Rational bernoulli_weight(const LatticeSumProblem& p, const RatVector& y) {
    Rational b = 1;
    for (std::size_t j = 0; j < y.size(); ++j) b *= bernoulli_poly(p.e[j], y[j]);
    return b;
}

// Edge direction from the corner: +w_j if y_j = 0, -w_j if y_j = 1.
int edge_sign(const ParallelepipedPoint& pt, std::size_t j) { return (pt.at_one >> j & 1) ? -1 : 1; }

std::size_t popcount(unsigned v) { return std::size_t(__builtin_popcount(v)); }

double to_double(const Rational& r) { return r.to_double(); }

// Dihedral angle (radians) along edge direction u_l between half-planes through u_a and u_b,
// given the Gram matrix of the signed edge vectors.
double dihedral(const std::vector<std::vector<double>>& g, std::size_t l, std::size_t a, std::size_t b) {
    double ll = g[l][l];
    double ab = g[a][b] - g[a][l] * g[b][l] / ll;
    double aa = g[a][a] - g[a][l] * g[a][l] / ll;
    double bb = g[b][b] - g[b][l] * g[b][l] / ll;
    double c = ab / std::sqrt(aa * bb);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

double numeric_angle(const LatticeSumProblem& p, const ParallelepipedPoint& pt) {
    std::size_t k = p.lattice.rank();
    std::size_t nb = popcount(pt.on_boundary);
    if (nb == 0) return 1.0;
    if (nb == 1) return 0.5;
    RatMatrix gw = gram(p.w);
    std::vector<std::vector<double>> g(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) g[i][j] = edge_sign(pt, i) * edge_sign(pt, j) * to_double(gw(i, j));
    std::vector<std::size_t> j_set, free;
    for (std::size_t j = 0; j < k; ++j) (pt.on_boundary >> j & 1 ? j_set : free).push_back(j);
    constexpr double pi = std::numbers::pi;
    if (nb == 2) {
        if (k == 2) return std::acos(std::clamp(g[0][1] / std::sqrt(g[0][0] * g[1][1]), -1.0, 1.0)) / (2 * pi);
        return dihedral(g, free[0], j_set[0], j_set[1]) / (2 * pi);
    }
    // trihedral corner: spherical excess
    double excess = dihedral(g, 0, 1, 2) + dihedral(g, 1, 0, 2) + dihedral(g, 2, 0, 1) - pi;
    return excess / (4 * pi);
}

}  // namespace

void validate(const LatticeSumProblem& p) {
    std::size_t d = p.lattice.ambient_dim(), k = p.lattice.rank();
    if (k == 0) throw std::invalid_argument("lattice must have positive rank");
    if (p.w.rows() != d || p.w.cols() != k)
        throw std::invalid_argument("W must be " + std::to_string(d) + " x " + std::to_string(k));
    if (p.e.size() != k) throw std::invalid_argument("e must have " + std::to_string(k) + " entries");
    for (int ej : p.e)
        if (ej <= 0) throw std::invalid_argument("exponents must be positive");
    for (int ej : p.e)
        if (ej > kMaxBernoulliDegree) throw std::invalid_argument("exponent too large");
    if (p.x.size() != d) throw std::invalid_argument("x must have " + std::to_string(d) + " entries");
    RatVector c;
    for (std::size_t j = 0; j < k; ++j)
        if (!coordinates_in_span(p.lattice.basis(), p.w.column(j), c))
            throw std::invalid_argument("columns of W must lie in the span of the lattice");
    RatMatrix a = pairing_matrix(p);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (!a(i, j).is_integer()) throw std::invalid_argument("columns of W must lie in the dual lattice");
    if (determinant(a).is_zero()) throw std::invalid_argument("columns of W must be independent");
}

LatticeSumParts lattice_sum_parts(const LatticeSumProblem& p) {
    validate(p);
    std::size_t k = p.lattice.rank();
    if (k > 2) throw std::invalid_argument("numeric mode required");
    LatticeSumParts parts;
    parts.index = abs(determinant(pairing_matrix(p)).num());
    Integer denom = parts.index;
    for (int ej : p.e) denom *= factorial(ej);
    parts.prefactor = Rational(Integer(k % 2 ? -1 : 1), denom);

    for (auto& pt : parallelepiped_points(p)) {
        Rational b = bernoulli_weight(p, pt.y);
        std::size_t nb = popcount(pt.on_boundary);
        if (nb == 0) {
            parts.interior += ExactValue(b);
        } else if (nb < k) {
            parts.facets += ExactValue(b * Rational(1, 2));
        } else if (k == 1) {
            parts.vertices += ExactValue(b * Rational(1, 2));
        } else {
            RatMatrix gw = gram(p.w);
            int s = edge_sign(pt, 0) * edge_sign(pt, 1);
            AngleValue ang = angle_of_cos_ratio(Rational(s) * gw(0, 1), gw(0, 0) * gw(1, 1));
            parts.vertices += ExactValue::omega(ang) * b;
        }
    }
    return parts;
}

ExactValue lattice_sum_finite(const LatticeSumProblem& p) {
    LatticeSumParts parts = lattice_sum_parts(p);
    return (parts.interior + parts.facets + parts.vertices) * parts.prefactor;
}

double lattice_sum_finite_numeric(const LatticeSumProblem& p) {
    validate(p);
    std::size_t k = p.lattice.rank();
    if (k <= 2) return eval_numeric(lattice_sum_finite(p));
    if (k > kMaxNumericRank) throw std::invalid_argument("rank above 3 is not supported");
    Integer denom = abs(determinant(pairing_matrix(p)).num());
    for (int ej : p.e) denom *= factorial(ej);
    double sum = 0;
    for (auto& pt : parallelepiped_points(p)) sum += to_double(bernoulli_weight(p, pt.y)) * numeric_angle(p, pt);
    return (k % 2 ? -1.0 : 1.0) * sum / denom.get_d();
}

Rational lattice_sum_residue_form(const RatMatrix& w, const std::vector<int>& e, const RatVector& x) {
    std::size_t d = w.rows();
    if (w.cols() != d || e.size() != d || x.size() != d)
        throw std::invalid_argument("W must be square with matching e and x");
    for (int ej : e)
        if (ej < 2) throw std::invalid_argument("conditionally convergent; use lattice_sum_finite");
    std::vector<IntVector> cols(d, IntVector(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (!w(i, j).is_integer()) throw std::invalid_argument("W must be an integer matrix");
            cols[j][i] = w(i, j).num();
        }
    Rational det = determinant(w);
    if (det.is_zero()) throw std::invalid_argument("W must be invertible");
    RatMatrix w_inv = inverse(w);

    // residues of Z^d / W Z^d: the box of the HNF diagonal
    std::vector<IntVector> h = hnf_rows(cols);
    std::vector<Integer> diag(d);
    for (std::size_t i = 0; i < d; ++i) diag[i] = abs(Integer(h[i][i]));

    Rational sum;
    RatVector n(d);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == d) {
            RatVector y = w_inv * (n - x);
            Rational b = 1;
            for (std::size_t j = 0; j < d; ++j) b *= periodized(e[j], y[j]);
            sum += b;
            return;
        }
        for (Integer v = 0; v < diag[i]; ++v) {
            n[i] = Rational(v);
            rec(i + 1);
        }
    };
    rec(0);
    Integer denom = abs(det.num());
    for (int ej : e) denom *= factorial(ej);
    return Rational(Integer(d % 2 ? -1 : 1), denom) * sum;
}

double lattice_sum_series(const LatticeSumProblem& p, double eps, long radius) {
    validate(p);
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    std::size_t k = p.lattice.rank();
    const RatMatrix& b = p.lattice.basis();
    RatMatrix a = pairing_matrix(p);  // a(i, j) = <b_i, w_j>
    RatMatrix g = gram(b);
    RatVector xi = b.transpose() * p.x;  // <x, b_i>

    Integer q = 1;
    for (auto& v : xi) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), v.den().get_mpz_t());
    if (!q.fits_slong_p()) throw std::invalid_argument("denominator of x too large for the series");
    long qq = q.get_si();
    std::vector<long> phase(k);
    for (std::size_t i = 0; i < k; ++i) {
        Integer r = (xi[i] * Rational(q)).num() % q;
        if (r < 0) r += q;
        phase[i] = r.get_si();
    }
    std::vector<std::vector<long>> pair(k, std::vector<long>(k));
    std::vector<std::vector<double>> gd(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            pair[i][j] = a(i, j).num().get_si();
            gd[i][j] = g(i, j).to_double();
        }
    EmbeddedLattice dual = dual_lattice(p.lattice);
    std::vector<long> bound(k);
    for (std::size_t i = 0; i < k; ++i)
        bound[i] = long(std::ceil(double(radius) * std::sqrt(norm_sq(dual.vector(i)).to_double()))) + 1;

    int total_e = 0;
    for (int ej : p.e) total_e += ej;
    constexpr double pi = std::numbers::pi;
    const double r2 = double(radius) * double(radius);
    long double sum = 0;
    std::vector<long> c(k);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i < k) {
            for (long v = -bound[i]; v <= bound[i]; ++v) {
                c[i] = v;
                rec(i + 1);
            }
            return;
        }
        double norm2 = 0;
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t t = 0; t < k; ++t) norm2 += gd[s][t] * double(c[s]) * double(c[t]);
        if (norm2 > r2) return;
        double denom = 1;
        for (std::size_t j = 0; j < k; ++j) {
            long dotj = 0;
            for (std::size_t s = 0; s < k; ++s) dotj += c[s] * pair[s][j];
            if (dotj == 0) return;
            denom *= std::pow(double(dotj), p.e[j]);
        }
        __int128 num = 0;
        for (std::size_t s = 0; s < k; ++s) num += __int128(c[s]) * phase[s];
        long residue = long(num % qq);
        if (residue < 0) residue += qq;
        double angle = 2 * pi * double(residue) / double(qq) + total_e * pi / 2;
        sum += std::cos(angle) / denom * std::exp(-pi * eps * norm2);
    };
    rec(0);
    return double(sum / std::pow(2 * pi, total_e));
}

double lattice_sum_extrapolated(const LatticeSumProblem& p, const std::vector<double>& eps, long radius) {
    if (eps.empty()) throw std::invalid_argument("empty eps sequence");
    std::vector<double> s, v;
    for (double e : eps) {
        s.push_back(std::sqrt(e));
        v.push_back(lattice_sum_series(p, e, radius));
    }
    // Neville's scheme at s = 0
    for (std::size_t m = 1; m < v.size(); ++m)
        for (std::size_t i = v.size() - 1; i >= m; --i) {
            v[i] = (s[i - m] * v[i] - s[i] * v[i - 1]) / (s[i - m] - s[i]);
            if (i == m) break;
        }
    return v.back();
}

LatticeSumProblem ridge_problem(const CodimTwoData& g, const Rational& t) {
    std::size_t d = g.xbar.size();
    LatticeSumProblem p;
    p.lattice = intersection_with_integer_lattice({to_rational(g.v_F1), to_rational(g.v_F2)}, d);
    p.w = RatMatrix::from_columns({g.v_F1_G, g.v_F2_G}, d);
    p.e = {1, 1};
    p.x = t * g.xbar;
    return p;
}

ExactValue ridge_decomposition(const CodimTwoData& g, const Rational& t) {
    Rational h(g.h), k(g.k);
    ExactValue v(-dr_sum_fast({g.h, g.k, (g.x1 + h * g.x2) * t, -k * g.x2 * t}));
    if (g.xbar_in_dual(t)) v += g.omega() - ExactValue(Rational(1, 4));
    return v;
}

}  // namespace eak
