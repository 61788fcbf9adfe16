#include "eak/lattice.hpp"

#include <stdexcept>

namespace eak {

EmbeddedLattice::EmbeddedLattice(RatMatrix basis) : basis_(std::move(basis)) {
    if (basis_.cols() == 0) {
        gram_det_ = 1;
        return;
    }
    gram_det_ = determinant(gram(basis_));
    if (gram_det_.sign() <= 0) throw std::invalid_argument("lattice basis columns are dependent");
}

bool EmbeddedLattice::coordinates(const RatVector& v, RatVector& c) const {
    if (rank() == 0) {
        c.clear();
        return is_zero(v);
    }
    return coordinates_in_span(basis_, v, c);
}

bool EmbeddedLattice::contains(const RatVector& v) const {
    RatVector c;
    if (!coordinates(v, c)) return false;
    for (auto& x : c)
        if (!x.is_integer()) return false;
    return true;
}

RatMatrix orthogonal_projection(const RatMatrix& u) {
    RatMatrix ut = u.transpose();
    RatMatrix g = ut * u;
    if (determinant(g).is_zero()) throw std::invalid_argument("dependent columns");
    return u * inverse(g) * ut;
}

std::vector<IntVector> hnf_rows(std::vector<IntVector> rows) {
    if (rows.empty()) return rows;
    std::size_t m = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < rows.size(); ++c) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t j = c; j < m; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (auto& x : rows[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q != 0)
                for (std::size_t j = c; j < m; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

std::vector<IntVector> integer_kernel(const std::vector<IntVector>& cons, std::size_t d) {
    std::size_t nc = cons.size();
    // Row i of the augmented matrix is (C e_i | e_i).
    std::vector<IntVector> aug(d, IntVector(nc + d, 0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < nc; ++j) aug[i][j] = cons[j][i];
        aug[i][nc + i] = 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < d; ++c) {
        for (;;) {
            std::size_t best = d;
            for (std::size_t i = r; i < d; ++i)
                if (aug[i][c] != 0 && (best == d || abs(aug[i][c]) < abs(aug[best][c]))) best = i;
            if (best == d) break;
            std::swap(aug[r], aug[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < d; ++i) {
                if (aug[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), aug[i][c].get_mpz_t(), aug[r][c].get_mpz_t());
                for (std::size_t j = 0; j < nc + d; ++j) aug[i][j] -= q * aug[r][j];
                if (aug[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (aug[r][c] != 0) ++r;
    }
    std::vector<IntVector> ker;
    for (std::size_t i = r; i < d; ++i) ker.emplace_back(aug[i].begin() + nc, aug[i].end());
    return hnf_rows(ker);
}

namespace {

Integer common_denominator(const std::vector<RatVector>& vs) {
    Integer l = 1;
    for (auto& v : vs)
        for (auto& x : v) l = lcm(l, x.den());
    return l;
}

EmbeddedLattice from_int_rows(const std::vector<IntVector>& rows, const Integer& scale,
                              std::size_t d) {
    std::vector<RatVector> cols;
    for (auto& r : rows) {
        RatVector v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = Rational(r[i], scale);
        cols.push_back(v);
    }
    return EmbeddedLattice(RatMatrix::from_columns(cols, d));
}

}  // namespace

EmbeddedLattice basis_from_generators(const std::vector<RatVector>& gens) {
    if (gens.empty()) throw std::invalid_argument("no generators");
    std::size_t d = gens[0].size();
    Integer l = common_denominator(gens);
    std::vector<IntVector> rows;
    for (auto& g : gens) {
        if (g.size() != d) throw std::invalid_argument("generator dimension mismatch");
        IntVector r(d);
        for (std::size_t i = 0; i < d; ++i) r[i] = g[i].num() * (l / g[i].den());
        rows.push_back(r);
    }
    return from_int_rows(hnf_rows(rows), l, d);
}

EmbeddedLattice basis_from_generators(const std::vector<RatVector>& gens, std::size_t rank) {
    auto l = basis_from_generators(gens);
    if (l.rank() != rank)
        throw std::invalid_argument("rank mismatch: generators span rank " +
                                    std::to_string(l.rank()) + ", expected " +
                                    std::to_string(rank));
    return l;
}

RatVector lattice_primitive(const EmbeddedLattice& l, const RatVector& direction) {
    RatVector c;
    if (is_zero(direction)) throw std::invalid_argument("zero direction");
    if (!l.coordinates(direction, c)) throw std::invalid_argument("direction not in span");
    return l.basis() * to_rational(primitive_integer_vector(c));
}

EmbeddedLattice intersection_with_integer_lattice(const std::vector<RatVector>& spanning,
                                                  std::size_t d) {
    std::vector<IntVector> cons;
    if (spanning.empty()) {
        for (std::size_t i = 0; i < d; ++i) {
            IntVector e(d, 0);
            e[i] = 1;
            cons.push_back(e);
        }
    } else {
        for (auto& n : nullspace(RatMatrix::from_rows(spanning)))
            cons.push_back(primitive_integer_vector(n));
    }
    return from_int_rows(integer_kernel(cons, d), Integer(1), d);
}

EmbeddedLattice dual_lattice(const EmbeddedLattice& l) {
    const RatMatrix& b = l.basis();
    return EmbeddedLattice(b * inverse(gram(b)));
}

EmbeddedLattice projected_integer_lattice(const RatMatrix& span_basis) {
    RatMatrix p = orthogonal_projection(span_basis);
    return basis_from_generators(p.columns(), span_basis.cols());
}

EmbeddedLattice orthogonal_lattice(const EmbeddedLattice& l) {
    std::size_t d = l.ambient_dim();
    if (l.rank() == 0) return EmbeddedLattice(RatMatrix::identity(d));
    auto comp = nullspace(l.basis().transpose());
    if (comp.empty()) return EmbeddedLattice(RatMatrix(d, 0));
    return intersection_with_integer_lattice(comp, d);
}

bool same_lattice(const EmbeddedLattice& a, const EmbeddedLattice& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.rank() != b.rank()) return false;
    for (std::size_t j = 0; j < a.rank(); ++j)
        if (!b.contains(a.vector(j))) return false;
    for (std::size_t j = 0; j < b.rank(); ++j)
        if (!a.contains(b.vector(j))) return false;
    return true;
}

namespace {

Integer as_integer(const Rational& r) {
    if (!r.is_integer()) throw std::invalid_argument("vector is not in the lattice");
    return r.num();
}

}  // namespace

ConeType cone_type(const EmbeddedLattice& l, const RatVector& v1, const RatVector& w) {
    if (l.rank() != 2) throw std::invalid_argument("cone type needs a rank-2 lattice");
    RatVector c1, cw;
    if (!l.coordinates(v1, c1) || !l.coordinates(w, cw))
        throw std::invalid_argument("vector not in lattice span");
    Integer p = as_integer(c1[0]), q = as_integer(c1[1]);
    Integer g, s, t;
    // s p + t q = g = 1; then (p, q) and (-t, s) have determinant 1.
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1) throw std::invalid_argument("v1 is not primitive");
    Integer r = -t, u = s;
    // w = alpha v1 + beta v2' with v2' = r b1 + u b2
    Integer a = as_integer(cw[0]), b = as_integer(cw[1]);
    Integer alpha = a * u - b * r;
    Integer beta = p * b - q * a;
    if (beta == 0) throw std::invalid_argument("v1 and w are parallel");
    if (beta < 0) {
        beta = -beta;
        r = -r;
        u = -u;
    }
    Integer h;
    mpz_fdiv_r(h.get_mpz_t(), alpha.get_mpz_t(), beta.get_mpz_t());
    Integer shift = (alpha - h) / beta;
    RatVector v2 = Rational(r) * l.vector(0) + Rational(u) * l.vector(1);
    v2 = v2 + Rational(shift) * v1;
    return ConeType{h, beta, v2};
}

}  // namespace eak
