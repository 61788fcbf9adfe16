#pragma once

#include "eak/exact.hpp"
#include "eak/lattice.hpp"
#include "eak/polytope.hpp"

namespace eak {

struct FacetData {
    std::size_t facet = 0;  // inequality index
    TightSet tight_set = 0;
    IntVector v_F;          // primitive outward normal
    Rational x_F_dot;       // <v_F, x> for x in F
    Rational vol_star;
    Rational norm_sq;
};

struct CodimTwoData {
    TightSet tight_set = 0;
    std::size_t f1 = 0, f2 = 0;  // inequality indices of the two facets
    IntVector v_F1, v_F2;
    AngleValue c_G;              // omega_G = arccos(c_G)/(2 pi)
    Integer h, k, h_inv;
    Rational x1, x2;
    Rational dot1, dot2;         // <v_F1, xbar>, <v_F2, xbar>
    Rational ratio12;            // |v_F1|^2 / |v_F2|^2
    Rational vol_star;
    EmbeddedLattice dual;        // Lambda_G^*: projection of Z^d to lin(G)^perp
    Rational lattice_gram_det;   // gram_det(Lambda_G), Lambda_G = lin(G)^perp cap Z^d
    RatVector v_F1_G, v_F2_G;    // primitive vectors of Lambda_G^* along the cone edges
    RatVector v2;                // completes (v_F1_G, v2) to a basis of Lambda_G^*
    RatVector xbar;              // projection of the face onto lin(G)^perp

    ExactValue omega() const { return ExactValue::omega(c_G); }
    // 1 if t * xbar lies in Lambda_G^*: t k x2 and t (x1 + h x2) are integers.
    bool xbar_in_dual(const Rational& t) const;
    Rational inner12() const;  // <v_F1, v_F2>
};

FacetData facet_data(const Polytope& p, std::size_t facet);
// F1 is the facet with the lexicographically smaller normal unless `swap` is set.
CodimTwoData codim2_data(const Polytope& p, const Face& g, bool swap = false);

struct LocalData {
    std::vector<FacetData> facets;
    std::vector<CodimTwoData> ridges;
};

LocalData local_data(const Polytope& p, bool swap = false, unsigned threads = 1);

}  // namespace eak
