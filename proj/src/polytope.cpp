#include "eak/polytope.hpp"

#include "eak/lattice.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace eak {

std::vector<std::size_t> tight_indices(TightSet s) {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < 64; ++i)
        if (s >> i & 1) r.push_back(i);
    return r;
}

std::string tight_label(TightSet s) {
    std::string out = "{";
    bool first = true;
    for (auto i : tight_indices(s)) {
        out += (first ? "" : ",") + std::to_string(i);
        first = false;
    }
    return out + "}";
}

std::size_t affine_rank(const std::vector<RatVector>& pts) {
    if (pts.size() <= 1) return 0;
    std::vector<RatVector> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
    return rank(RatMatrix::from_rows(diffs));
}

namespace {

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Rational eval_row(const Inequality& r, const RatVector& x) {
    Rational s;
    for (std::size_t i = 0; i < x.size(); ++i) s += Rational(r.a[i]) * x[i];
    return s;
}

Inequality normalize(const RatVector& a, const Rational& b) {
    IntVector p = primitive_integer_vector(a);
    // p = lambda a with lambda > 0
    std::size_t i = 0;
    while (a[i].is_zero()) ++i;
    Rational lambda = Rational(p[i]) / a[i];
    return Inequality{p, lambda * b};
}

bool ineq_less(const Inequality& x, const Inequality& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i)
        if (x.a[i] != y.a[i]) return x.a[i] < y.a[i];
    return x.b < y.b;
}

bool ineq_equal(const Inequality& x, const Inequality& y) { return x.a == y.a && x.b == y.b; }

bool vec_less(const RatVector& x, const RatVector& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

void check_bounded(const HRep& h) {
    std::size_t d = h.dim;
    std::vector<RatVector> a;
    for (auto& r : h.rows) a.push_back(to_rational(r.a));
    if (a.empty() || rank(RatMatrix::from_rows(a)) < d)
        throw std::invalid_argument("polytope is unbounded");
    auto ray_ok = [&](const RatVector& y) {
        for (auto& row : a)
            if (dot(row, y).sign() > 0) return false;
        return true;
    };
    for_each_subset(a.size(), d - 1, [&](const std::vector<std::size_t>& s) {
        std::vector<RatVector> sub;
        for (auto i : s) sub.push_back(a[i]);
        std::vector<RatVector> ker;
        if (sub.empty()) {
            for (std::size_t i = 0; i < d; ++i) {
                RatVector e(d);
                e[i] = 1;
                ker.push_back(e);
            }
        } else {
            ker = nullspace(RatMatrix::from_rows(sub));
        }
        if (ker.size() != 1) return;
        RatVector y = ker[0];
        if (ray_ok(y) || ray_ok(Rational(-1) * y)) throw std::invalid_argument("polytope is unbounded");
    });
}

}  // namespace

VRep vertex_enumeration(const HRep& h) {
    std::size_t d = h.dim;
    if (d == 0 || d > kMaxDimension)
        throw std::invalid_argument("dimension must be between 1 and " + std::to_string(kMaxDimension));
    for (auto& r : h.rows) {
        if (r.a.size() != d) throw std::invalid_argument("inequality has wrong length");
        if (std::all_of(r.a.begin(), r.a.end(), [](const Integer& x) { return x == 0; }))
            throw std::invalid_argument("inequality with zero normal");
    }
    check_bounded(h);
    std::vector<RatVector> verts;
    for_each_subset(h.rows.size(), d, [&](const std::vector<std::size_t>& s) {
        RatMatrix m(d, d);
        RatVector b(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) m(i, j) = Rational(h.rows[s[i]].a[j]);
            b[i] = h.rows[s[i]].b;
        }
        if (determinant(m).is_zero()) return;
        RatVector x = solve(m, b);
        for (auto& r : h.rows)
            if (eval_row(r, x) > r.b) return;
        verts.push_back(x);
    });
    std::sort(verts.begin(), verts.end(), vec_less);
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.empty()) throw std::invalid_argument("polytope is empty");
    return VRep{verts};
}

Polytope Polytope::from_hrep(const HRep& h) {
    HRep norm{h.dim, {}};
    for (auto& r : h.rows) {
        if (r.a.size() != h.dim) throw std::invalid_argument("inequality has wrong length");
        norm.rows.push_back(normalize(to_rational(r.a), r.b));
    }
    VRep v = vertex_enumeration(norm);
    if (affine_rank(v.vertices) < h.dim)
        throw std::invalid_argument("polytope is not full-dimensional");
    Polytope p;
    p.dim_ = h.dim;
    p.vertices_ = v.vertices;
    for (auto& r : norm.rows) {
        if (std::any_of(p.rows_.begin(), p.rows_.end(),
                        [&](const Inequality& q) { return ineq_equal(q, r); }))
            continue;
        std::vector<RatVector> tight;
        for (auto& x : p.vertices_)
            if (eval_row(r, x) == r.b) tight.push_back(x);
        if (!tight.empty() && affine_rank(tight) == h.dim - 1) p.rows_.push_back(r);
    }
    if (p.rows_.size() > kMaxFacets)
        throw std::invalid_argument("more than " + std::to_string(kMaxFacets) + " facets");
    p.build_faces();
    return p;
}

Polytope Polytope::from_vertices(std::size_t d, const std::vector<RatVector>& points) {
    if (d == 0 || d > kMaxDimension)
        throw std::invalid_argument("dimension must be between 1 and " + std::to_string(kMaxDimension));
    std::vector<RatVector> pts = points;
    for (auto& x : pts)
        if (x.size() != d) throw std::invalid_argument("vertex has wrong length");
    std::sort(pts.begin(), pts.end(), vec_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (affine_rank(pts) < d) throw std::invalid_argument("polytope is not full-dimensional");
    std::vector<Inequality> rows;
    for_each_subset(pts.size(), d, [&](const std::vector<std::size_t>& s) {
        RatVector n;
        if (d == 1) {
            n = RatVector{Rational(1)};
        } else {
            std::vector<RatVector> diffs;
            for (std::size_t i = 1; i < d; ++i) diffs.push_back(pts[s[i]] - pts[s[0]]);
            auto ker = nullspace(RatMatrix::from_rows(diffs));
            if (ker.size() != 1) return;
            n = ker[0];
        }
        Rational b = dot(n, pts[s[0]]);
        int side = 0;
        for (auto& x : pts) {
            int c = (dot(n, x) - b).sign();
            if (c == 0) continue;
            if (side == 0) side = c;
            else if (side != c) return;
        }
        if (side > 0) {
            n = Rational(-1) * n;
            b = -b;
        }
        rows.push_back(normalize(n, b));
    });
    std::sort(rows.begin(), rows.end(), ineq_less);
    rows.erase(std::unique(rows.begin(), rows.end(), ineq_equal), rows.end());
    return from_hrep(HRep{d, rows});
}

void Polytope::build_faces() {
    std::size_t m = rows_.size();
    vertex_tight_.assign(vertices_.size(), 0);
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        for (std::size_t i = 0; i < m; ++i)
            if (eval_row(rows_[i], vertices_[v]) == rows_[i].b) vertex_tight_[v] |= TightSet(1) << i;

    auto close = [&](const std::vector<std::size_t>& vs, Face& f) {
        TightSet t = ~TightSet(0);
        if (m < 64) t = (TightSet(1) << m) - 1;
        for (auto v : vs) t &= vertex_tight_[v];
        f.tight_set = vs.empty() ? 0 : t;
        f.vertex_ids.clear();
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if ((vertex_tight_[v] & f.tight_set) == f.tight_set) f.vertex_ids.push_back(v);
        std::vector<RatVector> pts;
        for (auto v : f.vertex_ids) pts.push_back(vertices_[v]);
        f.dim = static_cast<int>(affine_rank(pts));
        f.codim = static_cast<int>(dim_) - f.dim;
    };

    std::map<TightSet, Face> found;
    std::vector<Face> queue;
    Face whole;
    whole.tight_set = 0;
    for (std::size_t v = 0; v < vertices_.size(); ++v) whole.vertex_ids.push_back(v);
    whole.dim = static_cast<int>(dim_);
    whole.codim = 0;
    found[0] = whole;
    std::vector<std::vector<std::size_t>> facet_vertices(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (vertex_tight_[v] >> i & 1) facet_vertices[i].push_back(v);
        Face f;
        close(facet_vertices[i], f);
        if (f.tight_set != (TightSet(1) << i) || f.codim != 1)
            throw std::logic_error("facet closure mismatch");
        found[f.tight_set] = f;
        queue.push_back(f);
    }
    while (!queue.empty()) {
        Face f = queue.back();
        queue.pop_back();
        for (std::size_t i = 0; i < m; ++i) {
            if (f.tight_set >> i & 1) continue;
            std::vector<std::size_t> inter;
            std::set_intersection(f.vertex_ids.begin(), f.vertex_ids.end(), facet_vertices[i].begin(),
                                  facet_vertices[i].end(), std::back_inserter(inter));
            if (inter.empty()) continue;
            Face g;
            close(inter, g);
            if (found.count(g.tight_set)) continue;
            found[g.tight_set] = g;
            queue.push_back(g);
        }
    }
    faces_.clear();
    for (auto& [t, f] : found) faces_.push_back(f);
    std::stable_sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
        if (a.codim != b.codim) return a.codim < b.codim;
        return tight_indices(a.tight_set) < tight_indices(b.tight_set);
    });
    face_index_.clear();
    for (std::size_t i = 0; i < faces_.size(); ++i) face_index_[faces_[i].tight_set] = i;
    facet_face_.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) facet_face_[i] = face_index_.at(TightSet(1) << i);
    for (auto& f : faces_)
        if (f.codim == 2 && tight_indices(f.tight_set).size() != 2)
            throw std::logic_error("codimension-two face not in exactly two facets");
}

std::vector<Face> Polytope::faces_of_codim(int c) const {
    std::vector<Face> r;
    for (auto& f : faces_)
        if (f.codim == c) r.push_back(f);
    return r;
}

const Face* Polytope::face_by_tight_set(TightSet s) const {
    auto it = face_index_.find(s);
    return it == face_index_.end() ? nullptr : &faces_[it->second];
}

const Face& Polytope::facet(std::size_t i) const { return faces_.at(facet_face_.at(i)); }

std::vector<const Face*> Polytope::subfaces(const Face& f) const {
    std::vector<const Face*> r;
    for (auto& g : faces_)
        if (g.dim == f.dim - 1 && (g.tight_set & f.tight_set) == f.tight_set) r.push_back(&g);
    return r;
}

Integer Polytope::denominator() const {
    Integer l = 1;
    for (auto& v : vertices_)
        for (auto& x : v) l = lcm(l, x.den());
    return l;
}

Rational Polytope::volume() const { return relative_volume(*this, faces_.front()); }

Polytope Polytope::scaled(const Rational& s) const {
    if (s.sign() <= 0) throw std::invalid_argument("scale must be positive");
    std::vector<RatVector> vs;
    for (auto& v : vertices_) vs.push_back(s * v);
    return from_vertices(dim_, vs);
}

Polytope Polytope::translated(const RatVector& w) const {
    std::vector<RatVector> vs;
    for (auto& v : vertices_) vs.push_back(v + w);
    return from_vertices(dim_, vs);
}

Polytope Polytope::transformed(const RatMatrix& m, const RatVector& w) const {
    std::vector<RatVector> vs;
    for (auto& v : vertices_) vs.push_back(m * v + w);
    return from_vertices(dim_, vs);
}

std::vector<Face> faces_of_codim(const Polytope& p, int c) { return p.faces_of_codim(c); }

Integer denominator(const Polytope& p) { return p.denominator(); }

std::vector<std::vector<std::size_t>> triangulate(const Polytope& p, const Face& f) {
    if (f.dim == 0) return {{f.vertex_ids.front()}};
    std::size_t apex = f.vertex_ids.front();
    std::vector<std::vector<std::size_t>> out;
    for (const Face* g : p.subfaces(f)) {
        if (std::binary_search(g->vertex_ids.begin(), g->vertex_ids.end(), apex)) continue;
        for (auto s : triangulate(p, *g)) {
            s.insert(s.begin(), apex);
            out.push_back(std::move(s));
        }
    }
    return out;
}

Rational relative_volume(const Polytope& p, const Face& f) {
    if (f.dim == 0) throw std::invalid_argument("relative volume of a vertex is 1 by convention");
    const auto& vs = p.vertices();
    const RatVector& v0 = vs[f.vertex_ids.front()];
    std::vector<RatVector> dirs;
    for (auto v : f.vertex_ids) dirs.push_back(vs[v] - v0);
    EmbeddedLattice lat = intersection_with_integer_lattice(dirs, p.dim());
    std::size_t k = static_cast<std::size_t>(f.dim);
    if (lat.rank() != k) throw std::logic_error("face lattice rank mismatch");
    Integer fact = 1;
    for (std::size_t i = 2; i <= k; ++i) fact *= i;
    Rational total;
    for (auto& s : triangulate(p, f)) {
        RatMatrix m(k, k);
        for (std::size_t j = 1; j <= k; ++j) {
            RatVector c;
            lat.coordinates(vs[s[j]] - vs[s[0]], c);
            for (std::size_t i = 0; i < k; ++i) m(i, j - 1) = c[i];
        }
        total += determinant(m).abs();
    }
    return total / Rational(fact);
}

Rational face_relative_volume(const Polytope& p, const Face& f) {
    return f.dim == 0 ? Rational(1) : relative_volume(p, f);
}

}  // namespace eak
