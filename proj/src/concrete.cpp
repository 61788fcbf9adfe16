#include "eak/concrete.hpp"

#include "eak/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace eak {

RatMatrix SignedPermutation::matrix() const {
    std::size_t d = perm.size();
    RatMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, std::size_t(perm[i])) = Rational(sign[i]);
    return m;
}

std::string SignedPermutation::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < perm.size(); ++i) os << (i ? " " : "") << (sign[i] < 0 ? "-" : "+") << perm[i] + 1;
    os << ")";
    return os.str();
}

std::vector<SignedPermutation> hyperoctahedral_elements(std::size_t d) {
    if (d == 0 || d > kMaxDimension) throw std::invalid_argument("dimension must be between 1 and 4");
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<SignedPermutation> out;
    do {
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            SignedPermutation g{perm, std::vector<int>(d)};
            for (std::size_t i = 0; i < d; ++i) g.sign[i] = (mask >> i & 1) ? -1 : 1;
            out.push_back(std::move(g));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace {

// Inequality <a, y> <= num/den with integer data, for y = X/D - lambda.
struct IntRow {
    std::vector<long> a;
    long num = 0, den = 1;
};

constexpr long kSampleDenominator = 1000003;  // prime, so samples avoid small-denominator walls
constexpr int kMaxRetries = 64;

long to_long(const Integer& z) {
    if (!z.fits_slong_p()) throw std::invalid_argument("polytope data too large for the tiling check");
    return z.get_si();
}

// Number of lambda in the box with X/D - lambda in the polytope; nullopt if some
// X/D - lambda lies on a facet hyperplane of a translate that meets the closure.
std::optional<std::uint64_t> multiplicity(const std::vector<std::vector<IntRow>>& copies,
                                          const std::vector<long>& x, long box) {
    std::size_t d = x.size();
    std::uint64_t count = 0;
    std::vector<long> lambda(d, -box);
    for (;;) {
        for (auto& rows : copies) {
            bool inside = true, boundary = false;
            for (auto& r : rows) {
                // den * <a, X - D lambda> vs D * num
                __int128 lhs = 0;
                for (std::size_t i = 0; i < d; ++i)
                    lhs += __int128(r.a[i]) * (x[i] - __int128(kSampleDenominator) * lambda[i]);
                lhs *= r.den;
                __int128 rhs = __int128(kSampleDenominator) * r.num;
                if (lhs > rhs) {
                    inside = false;
                    break;
                }
                if (lhs == rhs) boundary = true;
            }
            if (inside && boundary) return std::nullopt;
            if (inside) ++count;
        }
        std::size_t i = 0;
        while (i < d && lambda[i] == box) lambda[i++] = -box;
        if (i == d) break;
        ++lambda[i];
    }
    return count;
}

}  // namespace

TilingReport symmetrized_multitiling_level(const Polytope& p, const TilingOptions& opts) {
    std::size_t d = p.dim();
    if (d > 3) throw std::invalid_argument("multi-tiling check supports d <= 3");
    if (opts.samples == 0) throw std::invalid_argument("samples must be positive");

    std::vector<std::vector<IntRow>> copies;
    for (auto& g : hyperoctahedral_elements(d)) {
        Polytope q = p.transformed(g.matrix(), RatVector(d));
        std::vector<IntRow> rows;
        for (auto& in : q.inequalities()) {
            IntRow r;
            for (auto& c : in.a) r.a.push_back(to_long(c));
            r.num = to_long(in.b.num());
            r.den = to_long(in.b.den());
            rows.push_back(std::move(r));
        }
        copies.push_back(std::move(rows));
    }
    Rational max_abs;
    for (auto& v : p.vertices())
        for (auto& c : v) max_abs = std::max(max_abs, c.abs());
    long box = to_long(max_abs.ceil()) + 1;

    std::vector<TilingWitness> results(opts.samples);
    parallel_for(opts.samples, resolve_threads(opts.threads), [&](std::size_t s) {
        std::seed_seq seq{std::uint32_t(opts.seed), std::uint32_t(opts.seed >> 32), std::uint32_t(s)};
        std::mt19937_64 rng(seq);
        std::uniform_int_distribution<long> coord(0, kSampleDenominator - 1);
        for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
            std::vector<long> x(d);
            for (auto& c : x) c = coord(rng);
            if (auto m = multiplicity(copies, x, box)) {
                RatVector pt(d);
                for (std::size_t i = 0; i < d; ++i) pt[i] = Rational(Integer(x[i]), Integer(kSampleDenominator));
                results[s] = {pt, *m};
                return;
            }
        }
        throw std::runtime_error("could not find a sample point off every boundary");
    });

    TilingReport rep;
    rep.samples = opts.samples;
    for (std::size_t s = 1; s < results.size(); ++s)
        if (results[s].multiplicity != results[0].multiplicity) {
            rep.constant = false;
            rep.witnesses = {results[0], results[s]};
            return rep;
        }
    rep.constant = true;
    rep.level = results[0].multiplicity;
    rep.witnesses = std::move(results);
    return rep;
}

ConcreteReport is_concrete(const Polytope& p, long t_max, const OracleOptions& opts) {
    if (p.dim() > 3) throw std::invalid_argument("concreteness check supports d <= 3");
    if (t_max < 1) throw std::invalid_argument("t_max must be positive");
    ConcreteReport rep;
    rep.t_max = t_max;
    Rational vol = p.volume();
    for (long t = 1; t <= t_max; ++t) {
        ExactValue a = solid_angle_sum(p, Rational(t), opts).exact;
        ExactValue defect = a - ExactValue(vol * pow(Rational(t), unsigned(p.dim())));
        if (!defect.is_zero()) {
            rep.concrete = false;
            rep.undecided = std::abs(eval_numeric(defect, 512)) < 1e-100;
            rep.first_failure = t;
            rep.defect = defect;
            return rep;
        }
    }
    return rep;
}

bool centrally_symmetric_facets(const Polytope& p) {
    for (std::size_t i = 0; i < p.inequalities().size(); ++i) {
        const Face& f = p.facet(i);
        std::set<RatVector> pts;
        RatVector sum(p.dim());
        for (auto id : f.vertex_ids) {
            pts.insert(p.vertices()[id]);
            sum = sum + p.vertices()[id];
        }
        // v -> 2c - v with c the vertex centroid
        Rational two_over_n(2, long(f.vertex_ids.size()));
        for (auto& v : pts)
            if (!pts.count(two_over_n * sum - v)) return false;
    }
    return true;
}

}  // namespace eak
