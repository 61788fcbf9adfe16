#pragma once

#include "eak/exact.hpp"

#include <vector>

namespace eak {

// Lattice spanned by the (independent) columns of a d x k rational matrix.
class EmbeddedLattice {
public:
    EmbeddedLattice() = default;
    explicit EmbeddedLattice(RatMatrix basis);

    const RatMatrix& basis() const { return basis_; }
    std::size_t ambient_dim() const { return basis_.rows(); }
    std::size_t rank() const { return basis_.cols(); }
    // det(B^T B); det(L) is its square root.
    const Rational& gram_det() const { return gram_det_; }
    RatVector vector(std::size_t j) const { return basis_.column(j); }

    // Coordinates of v in this basis, false if v is outside the span.
    bool coordinates(const RatVector& v, RatVector& c) const;
    bool contains(const RatVector& v) const;

private:
    RatMatrix basis_;
    Rational gram_det_;
};

RatMatrix orthogonal_projection(const RatMatrix& u);

// Hermite normal form of integer rows; returns the nonzero rows.
std::vector<IntVector> hnf_rows(std::vector<IntVector> rows);
// Basis of {z in Z^d : C z = 0} for integer constraint rows C.
std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t d);

EmbeddedLattice basis_from_generators(const std::vector<RatVector>& gens);
// As above, and throws std::invalid_argument if the rank is not `rank`.
EmbeddedLattice basis_from_generators(const std::vector<RatVector>& gens, std::size_t rank);

RatVector lattice_primitive(const EmbeddedLattice& l, const RatVector& direction);

// span(S) intersected with Z^d.
EmbeddedLattice intersection_with_integer_lattice(const std::vector<RatVector>& spanning,
                                                  std::size_t d);

// Dual lattice inside span(L): basis B (B^T B)^{-1}.
EmbeddedLattice dual_lattice(const EmbeddedLattice& l);
// Orthogonal projection of Z^d onto span(L).
EmbeddedLattice projected_integer_lattice(const RatMatrix& span_basis);
// {v in Z^d : <v,x> = 0 for all x in L}.
EmbeddedLattice orthogonal_lattice(const EmbeddedLattice& l);

bool same_lattice(const EmbeddedLattice& a, const EmbeddedLattice& b);

// For a rank-2 lattice with primitive v1, w: basis (v1, v2) with w = h v1 + k v2,
// k > 0 and 0 <= h < k.
struct ConeType {
    Integer h;
    Integer k;
    RatVector v2;
};
ConeType cone_type(const EmbeddedLattice& l, const RatVector& v1, const RatVector& w);

}  // namespace eak
