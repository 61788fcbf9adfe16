#pragma once

#include "eak/exact.hpp"
#include "eak/lattice.hpp"
#include "eak/local_data.hpp"

#include <vector>

namespace eak {

// Gaussian-regularized sum over xi in L with <w_j, xi> != 0 of
//   exp(-2 pi i <x, xi>) / ((2 pi i)^|e| prod <w_j, xi>^e_j) * exp(-pi eps |xi|^2)
// as eps -> 0.
struct LatticeSumProblem {
    EmbeddedLattice lattice;  // rank k in Q^d
    RatMatrix w;              // d x k, independent columns in the dual lattice
    std::vector<int> e;       // positive exponents, one per column
    RatVector x;
};

// Throws std::invalid_argument if the problem is malformed.
void validate(const LatticeSumProblem& p);

// Dual-lattice points of the parallelepiped proj(x) + W[0,1]^k, split by locus.
// Sums are unnormalized: weight B_e(W^+(n - x)) times the solid angle at n.
struct LatticeSumParts {
    ExactValue interior;
    ExactValue facets;    // relative interiors of the facets (edges when k = 2)
    ExactValue vertices;  // k = 2: the four corners
    Integer index;        // [dual lattice : W Z^k]
    Rational prefactor;   // (-1)^k / (e_1! ... e_k! index)
};

// Exact for k <= 2; throws "numeric mode required" for larger k.
ExactValue lattice_sum_finite(const LatticeSumProblem& p);
LatticeSumParts lattice_sum_parts(const LatticeSumProblem& p);
// Same sum in floating point; k <= 3 (corner angles of a 3-D parallelepiped by Girard).
double lattice_sum_finite_numeric(const LatticeSumProblem& p);

// Sum of B_e(W^{-1}(n - x)) over Z^d / W Z^d with periodized Bernoulli functions.
// W integer and invertible, every e_j >= 2.
Rational lattice_sum_residue_form(const RatMatrix& w, const std::vector<int>& e, const RatVector& x);

// Truncated series at fixed eps over lattice points with |xi| <= radius; real part.
double lattice_sum_series(const LatticeSumProblem& p, double eps, long radius);
// Series values at each eps, extrapolated to eps = 0 by a polynomial in sqrt(eps).
double lattice_sum_extrapolated(const LatticeSumProblem& p, const std::vector<double>& eps, long radius);
// Small enough for skewed ridge lattices to be in the asymptotic regime; pair with a
// radius of about 800 so the Gaussian tail at the smallest eps is negligible.
inline const std::vector<double> kSeriesEpsilons = {1e-3, 1e-4, 1e-5};
inline constexpr long kSeriesRadius = 800;

// The e = (1,1) problem of a codimension-two face at t: lattice Lambda_G,
// W = (v_F1_G, v_F2_G), x = t xbar_G.
LatticeSumProblem ridge_problem(const CodimTwoData& g, const Rational& t);
// Boundary part (omega_G - 1/4) 1[t xbar_G in Lambda_G^*] plus interior part
// -s(h, k; (x1 + h x2) t, -k x2 t); equals index times the finite form.
ExactValue ridge_decomposition(const CodimTwoData& g, const Rational& t);

}  // namespace eak
