#include "eak/local_data.hpp"

#include "eak/parallel.hpp"

#include <stdexcept>

namespace eak {

bool CodimTwoData::xbar_in_dual(const Rational& t) const {
    return (t * Rational(k) * x2).is_integer() && (t * (x1 + Rational(h) * x2)).is_integer();
}

Rational CodimTwoData::inner12() const { return dot(to_rational(v_F1), to_rational(v_F2)); }

FacetData facet_data(const Polytope& p, std::size_t i) {
    const Inequality& row = p.inequalities().at(i);
    const Face& f = p.facet(i);
    FacetData fd;
    fd.facet = i;
    fd.tight_set = f.tight_set;
    fd.v_F = row.a;
    fd.x_F_dot = row.b;
    fd.vol_star = face_relative_volume(p, f);
    fd.norm_sq = norm_sq(to_rational(row.a));
    return fd;
}

CodimTwoData codim2_data(const Polytope& p, const Face& g, bool swap) {
    auto fs = g.facets();
    if (g.codim != 2 || fs.size() != 2)
        throw std::invalid_argument("face " + tight_label(g.tight_set) +
                                    " is not a codimension-two face with two facets");
    std::size_t d = p.dim();
    std::size_t f1 = fs[0], f2 = fs[1];
    if (p.inequalities()[f2].a < p.inequalities()[f1].a) std::swap(f1, f2);
    if (swap) std::swap(f1, f2);

    CodimTwoData c;
    c.tight_set = g.tight_set;
    c.f1 = f1;
    c.f2 = f2;
    c.v_F1 = p.inequalities()[f1].a;
    c.v_F2 = p.inequalities()[f2].a;
    RatVector v1 = to_rational(c.v_F1), v2 = to_rational(c.v_F2);
    Rational n1 = norm_sq(v1), n2 = norm_sq(v2), ip = dot(v1, v2);
    c.c_G = angle_of_cos_ratio(-ip, n1 * n2);
    c.ratio12 = n1 / n2;

    RatMatrix u = RatMatrix::from_columns({v1, v2}, d);
    RatMatrix proj = orthogonal_projection(u);
    c.dual = basis_from_generators(proj.columns(), 2);
    c.lattice_gram_det = intersection_with_integer_lattice({v1, v2}, d).gram_det();

    RatVector f12 = n1 * v2 - ip * v1;
    RatVector f21 = n2 * v1 - ip * v2;
    c.v_F1_G = lattice_primitive(c.dual, f12);
    c.v_F2_G = lattice_primitive(c.dual, f21);
    ConeType ct = cone_type(c.dual, c.v_F1_G, c.v_F2_G);
    c.h = ct.h;
    c.k = ct.k;
    c.v2 = ct.v2;
    if (c.h == 0) {
        c.h_inv = 1;
    } else {
        Integer inv;
        mpz_invert(inv.get_mpz_t(), c.h.get_mpz_t(), c.k.get_mpz_t());
        c.h_inv = inv == 0 ? Integer(1) : inv;
    }

    c.xbar = proj * p.vertices()[g.vertex_ids.front()];
    RatVector coords;
    RatMatrix w = RatMatrix::from_columns({c.v_F1_G, c.v_F2_G}, d);
    if (!coordinates_in_span(w, c.xbar, coords)) throw std::logic_error("xbar outside the normal plane");
    c.x1 = coords[0];
    c.x2 = coords[1];
    c.dot1 = dot(v1, c.xbar);
    c.dot2 = dot(v2, c.xbar);
    c.vol_star = face_relative_volume(p, g);
    return c;
}

LocalData local_data(const Polytope& p, bool swap, unsigned threads) {
    LocalData ld;
    for (std::size_t i = 0; i < p.inequalities().size(); ++i) ld.facets.push_back(facet_data(p, i));
    auto ridges = p.faces_of_codim(2);
    ld.ridges.resize(ridges.size());
    parallel_for(ridges.size(), threads,
                 [&](std::size_t i) { ld.ridges[i] = codim2_data(p, ridges[i], swap); });
    return ld;
}

}  // namespace eak
