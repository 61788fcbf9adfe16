#pragma once

#include "eak/exact.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace eak {

inline constexpr std::size_t kMaxDimension = 4;
inline constexpr std::size_t kMaxFacets = 64;

// <a, x> <= b
struct Inequality {
    IntVector a;
    Rational b;
};

struct HRep {
    std::size_t dim = 0;
    std::vector<Inequality> rows;
};

struct VRep {
    std::vector<RatVector> vertices;
};

// Bit i set: inequality i is active.
using TightSet = std::uint64_t;

std::vector<std::size_t> tight_indices(TightSet s);
std::string tight_label(TightSet s);

struct Face {
    TightSet tight_set = 0;
    std::vector<std::size_t> vertex_ids;
    int dim = 0;
    int codim = 0;
    // Facets containing the face (inequality indices), ascending.
    std::vector<std::size_t> facets() const { return tight_indices(tight_set); }
};

// Full-dimensional bounded rational polytope with an irredundant, primitive H-description
// and its face lattice.
class Polytope {
public:
    static Polytope from_hrep(const HRep& h);
    static Polytope from_vertices(std::size_t dim, const std::vector<RatVector>& points);

    std::size_t dim() const { return dim_; }
    const std::vector<Inequality>& inequalities() const { return rows_; }
    const std::vector<RatVector>& vertices() const { return vertices_; }
    HRep hrep() const { return HRep{dim_, rows_}; }

    // Nonempty faces ordered by codim, then by tight set; includes the polytope itself.
    const std::vector<Face>& faces() const { return faces_; }
    std::vector<Face> faces_of_codim(int c) const;
    // nullptr if no face has exactly this tight set.
    const Face* face_by_tight_set(TightSet s) const;
    const Face& facet(std::size_t i) const;
    // Faces of `f` of dimension dim(f) - 1.
    std::vector<const Face*> subfaces(const Face& f) const;
    TightSet vertex_tight_set(std::size_t v) const { return vertex_tight_[v]; }

    Integer denominator() const;
    Rational volume() const;
    bool is_integral() const { return denominator() == 1; }

    Polytope scaled(const Rational& s) const;
    Polytope translated(const RatVector& w) const;
    // x -> M x + w
    Polytope transformed(const RatMatrix& m, const RatVector& w) const;

private:
    void build_faces();

    std::size_t dim_ = 0;
    std::vector<Inequality> rows_;
    std::vector<RatVector> vertices_;
    std::vector<TightSet> vertex_tight_;
    std::vector<Face> faces_;
    std::map<TightSet, std::size_t> face_index_;
    std::vector<std::size_t> facet_face_;
};

VRep vertex_enumeration(const HRep& h);
std::vector<Face> faces_of_codim(const Polytope& p, int c);
// Volume normalized by the lattice lin(F) cap Z^d; throws for vertices.
Rational relative_volume(const Polytope& p, const Face& f);
// relative_volume, with the convention 1 for a vertex.
Rational face_relative_volume(const Polytope& p, const Face& f);
Integer denominator(const Polytope& p);

std::size_t affine_rank(const std::vector<RatVector>& pts);

// Simplices (vertex id lists) triangulating the face, apex = smallest vertex id.
std::vector<std::vector<std::size_t>> triangulate(const Polytope& p, const Face& f);

}  // namespace eak
