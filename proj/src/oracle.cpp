#include "eak/oracle.hpp"

#include "eak/parallel.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

namespace eak {

SolidAngleValue& SolidAngleValue::operator+=(const SolidAngleValue& o) {
    exact += o.exact;
    mc += o.mc;
    mc_std_error = std::sqrt(mc_std_error * mc_std_error + o.mc_std_error * o.mc_std_error);
    has_mc = has_mc || o.has_mc;
    return *this;
}

SolidAngleValue& SolidAngleValue::operator*=(const Rational& s) {
    exact *= s;
    mc *= s.to_double();
    mc_std_error *= std::abs(s.to_double());
    return *this;
}

namespace {

std::int64_t to_int64(const Integer& z, const char* what) {
    if (!z.fits_slong_p()) throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
    return z.get_si();
}

struct ScanData {
    std::size_t d = 0, m = 0;
    std::vector<std::vector<std::int64_t>> a;
    std::vector<std::int64_t> bound;  // floor(t b_i)
    std::vector<bool> integral;       // t b_i is an integer
};

ScanData prepare(const Polytope& p, const Rational& t) {
    if (t.sign() <= 0) throw std::invalid_argument("dilation t must be positive");
    ScanData s;
    s.d = p.dim();
    s.m = p.inequalities().size();
    for (auto& row : p.inequalities()) {
        std::vector<std::int64_t> a;
        for (auto& x : row.a) a.push_back(to_int64(x, "inequality coefficient"));
        s.a.push_back(a);
        Rational tb = t * row.b;
        s.bound.push_back(to_int64(tb.floor(), "dilated right-hand side"));
        s.integral.push_back(tb.is_integer());
    }
    return s;
}

using Box = std::vector<std::pair<std::int64_t, std::int64_t>>;

// Integer box of t * conv(points); empty if some range is empty.
Box box_of(const std::vector<RatVector>& pts, const Rational& t, std::size_t d) {
    Box b(d);
    for (std::size_t j = 0; j < d; ++j) {
        Rational lo = t * pts[0][j], hi = lo;
        for (auto& v : pts) {
            Rational x = t * v[j];
            if (x < lo) lo = x;
            if (x > hi) hi = x;
        }
        b[j] = {to_int64(lo.ceil(), "box bound"), to_int64(hi.floor(), "box bound")};
    }
    return b;
}

void check_budget(const Box& b, std::uint64_t budget) {
    long double size = 1;
    for (auto& [lo, hi] : b) size *= (hi >= lo) ? static_cast<long double>(hi - lo + 1) : 0.0L;
    if (size > static_cast<long double>(budget)) {
        std::ostringstream os;
        os << "enumeration budget exceeded: box of " << static_cast<double>(size)
           << " points exceeds budget " << budget;
        throw std::runtime_error(os.str());
    }
}

using Counts = std::map<TightSet, std::uint64_t>;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Lattice points of the scan region grouped by tight set. Parallel over the first coordinate.
Counts scan(const ScanData& s, const Box& box, unsigned threads) {
    for (auto& [lo, hi] : box)
        if (lo > hi) return {};
    std::size_t d = s.d;
    std::int64_t first_lo = box[0].first, first_hi = box[0].second;
    std::size_t slabs = static_cast<std::size_t>(first_hi - first_lo + 1);
    std::vector<Counts> per_slab(slabs);

    auto run_slab = [&](std::size_t slab) {
        Counts& out = per_slab[slab];
        std::vector<std::int64_t> x(d, 0);
        x[0] = first_lo + static_cast<std::int64_t>(slab);
        // recursive odometer over coordinates 1..d-2, last coordinate by interval
        std::function<void(std::size_t)> rec = [&](std::size_t j) {
            if (j + 1 == d) {
                std::vector<std::int64_t> part(s.m, 0);
                for (std::size_t i = 0; i < s.m; ++i)
                    for (std::size_t c = 0; c + 1 < d; ++c) part[i] += s.a[i][c] * x[c];
                std::int64_t lo = box[d - 1].first, hi = box[d - 1].second;
                for (std::size_t i = 0; i < s.m && lo <= hi; ++i) {
                    std::int64_t c = s.a[i][d - 1];
                    std::int64_t r = s.bound[i] - part[i];
                    if (c > 0) hi = std::min(hi, floor_div(r, c));
                    else if (c < 0) lo = std::max(lo, ceil_div(r, c));
                    else if (r < 0) hi = lo - 1;
                }
                for (std::int64_t v = lo; v <= hi; ++v) {
                    TightSet mask = 0;
                    for (std::size_t i = 0; i < s.m; ++i)
                        if (s.integral[i] && part[i] + s.a[i][d - 1] * v == s.bound[i])
                            mask |= TightSet(1) << i;
                    ++out[mask];
                }
                return;
            }
            for (x[j] = box[j].first; x[j] <= box[j].second; ++x[j]) rec(j + 1);
        };
        if (d == 1) {
            std::int64_t v = x[0];
            TightSet mask = 0;
            for (std::size_t i = 0; i < s.m; ++i) {
                std::int64_t lhs = s.a[i][0] * v;
                if (lhs > s.bound[i]) return;
                if (s.integral[i] && lhs == s.bound[i]) mask |= TightSet(1) << i;
            }
            ++out[mask];
            return;
        }
        rec(1);
    };
    parallel_for(slabs, threads, run_slab);
    Counts total;
    for (auto& c : per_slab)
        for (auto& [k, v] : c) total[k] += v;
    return total;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

SolidAngleValue monte_carlo_cone(const Polytope& p, const Face& f, std::uint64_t samples,
                                 std::uint64_t seed) {
    std::vector<std::vector<double>> normals;
    for (auto i : f.facets()) {
        std::vector<double> a;
        for (auto& x : p.inequalities()[i].a) a.push_back(x.get_d());
        normals.push_back(a);
    }
    std::mt19937_64 rng(splitmix64(seed));
    std::normal_distribution<double> g(0.0, 1.0);
    std::uint64_t hits = 0;
    std::vector<double> y(p.dim());
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (auto& v : y) v = g(rng);
        bool in = true;
        for (auto& a : normals) {
            double ip = 0;
            for (std::size_t j = 0; j < y.size(); ++j) ip += a[j] * y[j];
            if (ip >= 0) {
                in = false;
                break;
            }
        }
        hits += in;
    }
    double phat = static_cast<double>(hits) / static_cast<double>(samples);
    SolidAngleValue v;
    v.mc = phat;
    v.mc_std_error = std::sqrt(phat * (1 - phat) / static_cast<double>(samples));
    v.has_mc = true;
    return v;
}

std::string cache_key(const Polytope& p, const OracleOptions& o) {
    std::ostringstream os;
    os << p.dim() << '|' << o.mc_samples << '|' << o.seed;
    for (auto& r : p.inequalities()) os << '|' << to_string(r.a) << r.b;
    return os.str();
}

}  // namespace

std::vector<SolidAngleValue> face_angles(const Polytope& p, const OracleOptions& opts) {
    static std::mutex mu;
    static std::map<std::string, std::vector<SolidAngleValue>> cache;
    std::string key = cache_key(p, opts);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const auto& faces = p.faces();
    std::vector<SolidAngleValue> out(faces.size());
    // codim 0..3 exactly; deeper cones by Monte Carlo
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        const Face& f = faces[fi];
        SolidAngleValue v;
        if (f.codim == 0) {
            v.exact = ExactValue(1);
        } else if (f.codim == 1) {
            v.exact = ExactValue(Rational(1, 2));
        } else if (f.codim == 2) {
            auto fs = f.facets();
            RatVector a = to_rational(p.inequalities()[fs[0]].a);
            RatVector b = to_rational(p.inequalities()[fs[1]].a);
            v.exact = ExactValue::omega(angle_of_cos_ratio(-dot(a, b), norm_sq(a) * norm_sq(b)));
        } else if (f.codim == 3) {
            // spherical excess of the 3-dimensional normal cone
            ExactValue sum;
            for (std::size_t gi = 0; gi < faces.size(); ++gi) {
                const Face& g = faces[gi];
                if (g.codim == 2 && (g.tight_set & f.tight_set) == g.tight_set) sum += out[gi].exact;
            }
            auto n = static_cast<long>(f.facets().size());
            v.exact = sum * Rational(1, 2) - ExactValue(Rational(n - 2, 4));
        }
        out[fi] = v;
    }
    std::vector<std::size_t> deep;
    for (std::size_t fi = 0; fi < faces.size(); ++fi)
        if (faces[fi].codim >= 4) deep.push_back(fi);
    parallel_for(deep.size(), opts.threads, [&](std::size_t i) {
        std::size_t fi = deep[i];
        out[fi] = monte_carlo_cone(p, faces[fi], opts.mc_samples,
                                   opts.seed ^ (0x9E3779B97F4A7C15ULL * (fi + 1)));
    });
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = out;
    return out;
}

std::vector<std::pair<TightSet, std::uint64_t>> classify_points(const Polytope& p, const Rational& t,
                                                               const OracleOptions& opts) {
    ScanData s = prepare(p, t);
    Box b = box_of(p.vertices(), t, p.dim());
    check_budget(b, opts.budget);
    Counts c = scan(s, b, opts.threads);
    return {c.begin(), c.end()};
}

Integer count_points(const Polytope& p, const Rational& t, const OracleOptions& opts) {
    Integer n = 0;
    for (auto& [mask, c] : classify_points(p, t, opts)) n += Integer(static_cast<unsigned long>(c));
    return n;
}

namespace {

std::size_t face_position(const Polytope& p, TightSet mask) {
    const Face* f = p.face_by_tight_set(mask);
    if (!f) throw std::logic_error("lattice point with tight set " + tight_label(mask) + " matches no face");
    return static_cast<std::size_t>(f - p.faces().data());
}

}  // namespace

AngleAtPoint solid_angle_at(const Polytope& p, const RatVector& x, const OracleOptions& opts) {
    if (x.size() != p.dim()) throw std::invalid_argument("point has wrong dimension");
    TightSet mask = 0;
    for (std::size_t i = 0; i < p.inequalities().size(); ++i) {
        const auto& row = p.inequalities()[i];
        Rational lhs = dot(to_rational(row.a), x);
        if (lhs > row.b) return AngleAtPoint{};
        if (lhs == row.b) mask |= TightSet(1) << i;
    }
    std::size_t fi = face_position(p, mask);
    const Face& f = p.faces()[fi];
    AngleAtPoint a;
    a.codim = f.codim;
    if (f.codim == 0) a.locus = Locus::interior;
    else if (f.codim == 1) a.locus = Locus::facet;
    else if (f.dim == 0) a.locus = Locus::vertex;
    else if (f.codim == 2) a.locus = Locus::codim2;
    else a.locus = Locus::deeper;
    a.value = face_angles(p, opts)[fi];
    return a;
}

SolidAngleValue solid_angle_sum(const Polytope& p, const Rational& t, const OracleOptions& opts) {
    auto angles = face_angles(p, opts);
    SolidAngleValue total;
    for (auto& [mask, c] : classify_points(p, t, opts)) {
        SolidAngleValue v = angles[face_position(p, mask)];
        v *= Rational(Integer(static_cast<unsigned long>(c)));
        total += v;
    }
    return total;
}

SolidAngleValue face_angle_cross_check(const Polytope& p, const Rational& t, const OracleOptions& opts) {
    auto angles = face_angles(p, opts);
    ScanData s = prepare(p, t);
    SolidAngleValue total;
    const auto& faces = p.faces();
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        std::vector<RatVector> pts;
        for (auto v : faces[fi].vertex_ids) pts.push_back(p.vertices()[v]);
        Box b = box_of(pts, t, p.dim());
        check_budget(b, opts.budget);
        Counts c = scan(s, b, opts.threads);
        auto it = c.find(faces[fi].tight_set);
        if (it == c.end()) continue;
        SolidAngleValue v = angles[fi];
        v *= Rational(Integer(static_cast<unsigned long>(it->second)));
        total += v;
    }
    return total;
}

namespace {

RatMatrix vandermonde_inverse(const std::vector<Rational>& ts, std::size_t degree) {
    if (ts.size() != degree + 1) throw std::invalid_argument("need degree + 1 samples");
    RatMatrix v(degree + 1, degree + 1);
    for (std::size_t j = 0; j <= degree; ++j)
        for (std::size_t k = 0; k <= degree; ++k) v(j, k) = pow(ts[j], static_cast<unsigned>(k));
    try {
        return inverse(v);
    } catch (const std::domain_error&) {
        throw std::invalid_argument("singular interpolation system (duplicate sample points)");
    }
}

}  // namespace

std::vector<ExactValue> interpolate_coefficients(
    const std::vector<std::pair<Rational, ExactValue>>& samples, std::size_t degree) {
    std::vector<Rational> ts;
    for (auto& s : samples) ts.push_back(s.first);
    RatMatrix inv = vandermonde_inverse(ts, degree);
    std::vector<ExactValue> c(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k)
        for (std::size_t j = 0; j <= degree; ++j) c[k] += samples[j].second * inv(k, j);
    return c;
}

std::vector<SolidAngleValue> interpolate_coefficients(
    const std::vector<std::pair<Rational, SolidAngleValue>>& samples, std::size_t degree) {
    std::vector<Rational> ts;
    for (auto& s : samples) ts.push_back(s.first);
    RatMatrix inv = vandermonde_inverse(ts, degree);
    std::vector<SolidAngleValue> c(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k)
        for (std::size_t j = 0; j <= degree; ++j) {
            SolidAngleValue v = samples[j].second;
            v *= inv(k, j);
            c[k] += v;
        }
    return c;
}

std::vector<Rational> ehrhart_coefficients_at(const Polytope& p, const Rational& t,
                                              const OracleOptions& opts) {
    Rational m(p.denominator());
    std::vector<std::pair<Rational, ExactValue>> samples;
    for (std::size_t j = 0; j <= p.dim(); ++j) {
        Rational s = t + Rational(static_cast<long>(j)) * m;
        samples.emplace_back(s, ExactValue(Rational(count_points(p, s, opts))));
    }
    std::vector<Rational> out;
    for (auto& c : interpolate_coefficients(samples, p.dim())) out.push_back(c.rational_part());
    return out;
}

std::vector<SolidAngleValue> solid_angle_coefficients_at(const Polytope& p, const Rational& t,
                                                         const OracleOptions& opts) {
    Rational m(p.denominator());
    std::vector<std::pair<Rational, SolidAngleValue>> samples;
    for (std::size_t j = 0; j <= p.dim(); ++j) {
        Rational s = t + Rational(static_cast<long>(j)) * m;
        samples.emplace_back(s, solid_angle_sum(p, s, opts));
    }
    return interpolate_coefficients(samples, p.dim());
}

}  // namespace eak
