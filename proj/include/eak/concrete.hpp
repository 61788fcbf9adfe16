#pragma once

#include "eak/exact.hpp"
#include "eak/oracle.hpp"
#include "eak/polytope.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eak {

// x -> y with y_i = sign[i] * x_{perm[i]}.
struct SignedPermutation {
    std::vector<int> perm;
    std::vector<int> sign;

    RatMatrix matrix() const;
    std::string str() const;
};

// All 2^d d! elements; permutations in lexicographic order, then sign patterns.
std::vector<SignedPermutation> hyperoctahedral_elements(std::size_t d);

struct TilingWitness {
    RatVector point;
    std::uint64_t multiplicity = 0;
};

// Multiplicity of sum over gamma of [gamma P] at sampled generic points of [0,1)^d.
// Sampling only: a constant level is evidence, not a proof.
struct TilingReport {
    bool constant = false;
    std::uint64_t level = 0;                   // valid when constant
    std::vector<TilingWitness> witnesses;      // all samples, or the first disagreeing pair
    std::size_t samples = 0;
};

struct TilingOptions {
    std::size_t samples = 256;
    std::uint64_t seed = 0x7111;
    unsigned threads = 1;
};

TilingReport symmetrized_multitiling_level(const Polytope& p, const TilingOptions& opts = {});

struct ConcreteReport {
    bool concrete = true;
    long t_max = 0;
    std::optional<long> first_failure;
    ExactValue defect;  // A_P(t) - vol(P) t^d at the first failure
    // The defect has a nonzero canonical form but vanishes to high precision: a
    // relation between arccos values the canonical form does not see.
    bool undecided = false;
};

// Checks A_P(t) = vol(P) t^d exactly for t = 1..t_max (d <= 3).
ConcreteReport is_concrete(const Polytope& p, long t_max, const OracleOptions& opts = {});

// Every facet is symmetric about its vertex centroid.
bool centrally_symmetric_facets(const Polytope& p);

}  // namespace eak
