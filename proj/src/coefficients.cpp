#include "eak/coefficients.hpp"

#include "eak/bernoulli.hpp"
#include "eak/dedekind.hpp"

#include <sstream>
#include <stdexcept>

namespace eak {

std::string to_string(CoefficientKind k) {
    switch (k) {
        case CoefficientKind::a_d1: return "a_d1";
        case CoefficientKind::a_d2: return "a_d2";
        case CoefficientKind::e_d1: return "e_d1";
        case CoefficientKind::e_d2: return "e_d2";
    }
    return "?";
}

std::string to_string(Flavor f) { return f == Flavor::solid_angle ? "solid-angle" : "ehrhart"; }

QuasiCoefficient::QuasiCoefficient(CoefficientKind kind, std::vector<FacetData> facets,
                                   std::vector<CodimTwoData> ridges, Integer period)
    : kind_(kind), facets_(std::move(facets)), ridges_(std::move(ridges)), period_(std::move(period)) {}

namespace {

bool is_facet_kind(CoefficientKind k) { return k == CoefficientKind::a_d1 || k == CoefficientKind::e_d1; }

Rational facet_term(CoefficientKind kind, const FacetData& f, const Rational& t) {
    Rational arg = f.x_F_dot * t;
    Rational b = kind == CoefficientKind::a_d1 ? periodized(1, arg) : one_sided_B1(arg, Side::plus);
    return -f.vol_star * b;
}

// The two B2bar terms shared by both codimension-two formulas.
Rational bernoulli_part(const CodimTwoData& g, const Rational& t) {
    Rational ip = g.inner12();
    Rational k(g.k);
    Rational q1 = -ip / (2 * k * norm_sq(to_rational(g.v_F1)));
    Rational q2 = -ip / (2 * k * norm_sq(to_rational(g.v_F2)));
    return q1 * periodized(2, g.dot1 * t) + q2 * periodized(2, g.dot2 * t);
}

Rational dedekind_part(const CodimTwoData& g, const Rational& t) {
    Rational h(g.h), k(g.k);
    return dr_sum_fast({g.h, g.k, (g.x1 + h * g.x2) * t, -k * g.x2 * t});
}

}  // namespace

ExactValue a_d2_term(const CodimTwoData& g, const Rational& t) {
    ExactValue v(bernoulli_part(g, t) - dedekind_part(g, t));
    if (g.xbar_in_dual(t)) v += g.omega() - ExactValue(Rational(1, 4));
    return v * g.vol_star;
}

Rational e_d2_term(const CodimTwoData& g, const Rational& t) {
    Rational h(g.h), k(g.k), hinv(g.h_inv);
    Rational v = bernoulli_part(g, t) - dedekind_part(g, t);
    v -= Rational(1, 2) * indicator_Z(k * g.x1 * t) * periodized(1, (hinv * g.x1 + g.x2) * t);
    v -= Rational(1, 2) * indicator_Z(k * g.x2 * t) * one_sided_B1((g.x1 + h * g.x2) * t, Side::plus);
    return v * g.vol_star;
}

std::vector<ExactValue> QuasiCoefficient::term_values(const Rational& t) const {
    std::vector<ExactValue> out;
    if (is_facet_kind(kind_)) {
        for (auto& f : facets_) out.emplace_back(facet_term(kind_, f, t));
    } else {
        for (auto& g : ridges_)
            out.push_back(kind_ == CoefficientKind::a_d2 ? a_d2_term(g, t) : ExactValue(e_d2_term(g, t)));
    }
    return out;
}

ExactValue QuasiCoefficient::eval_any(const Rational& t) const {
    ExactValue s;
    for (auto& v : term_values(t)) s += v;
    return s;
}

ExactValue QuasiCoefficient::eval(const Rational& t) const {
    if (t.sign() <= 0) throw std::invalid_argument("t must be positive");
    return eval_any(t);
}

std::vector<std::string> QuasiCoefficient::describe() const {
    std::vector<std::string> lines;
    if (is_facet_kind(kind_)) {
        const char* b = kind_ == CoefficientKind::a_d1 ? "B1bar" : "B1plus";
        for (auto& f : facets_) {
            std::ostringstream os;
            os << "F" << tight_label(f.tight_set) << " v=" << to_string(f.v_F) << ": -(" << f.vol_star
               << ")*" << b << "(" << f.x_F_dot << "*t)";
            lines.push_back(os.str());
        }
        return lines;
    }
    for (auto& g : ridges_) {
        Rational ip = g.inner12(), k(g.k), h(g.h);
        Rational q1 = -ip / (2 * k * norm_sq(to_rational(g.v_F1)));
        Rational q2 = -ip / (2 * k * norm_sq(to_rational(g.v_F2)));
        std::ostringstream os;
        os << "G" << tight_label(g.tight_set) << " (h,k)=(" << g.h << "," << g.k << "): (" << g.vol_star
           << ")*[ (" << q1 << ")*B2bar(" << g.dot1 << "*t) + (" << q2 << ")*B2bar(" << g.dot2 << "*t)";
        if (kind_ == CoefficientKind::a_d2)
            os << " + (" << g.omega() - ExactValue(Rational(1, 4)) << ")*1[" << k * g.x2 << "*t, "
               << g.x1 + h * g.x2 << "*t in Z]";
        os << " - s(" << g.h << "," << g.k << "; " << g.x1 + h * g.x2 << "*t, " << -k * g.x2 << "*t)";
        if (kind_ == CoefficientKind::e_d2)
            os << " - (1/2)*1_Z(" << k * g.x1 << "*t)*B1bar(" << Rational(g.h_inv) * g.x1 + g.x2
               << "*t) - (1/2)*1_Z(" << k * g.x2 << "*t)*B1plus(" << g.x1 + h * g.x2 << "*t)";
        os << " ]";
        lines.push_back(os.str());
    }
    return lines;
}

QuasiCoefficient make_coefficient(CoefficientKind kind, const Polytope& p, const LocalData& ld) {
    if (is_facet_kind(kind)) return QuasiCoefficient(kind, ld.facets, {}, p.denominator());
    return QuasiCoefficient(kind, {}, ld.ridges, p.denominator());
}

namespace {

QuasiCoefficient build(CoefficientKind kind, const Polytope& p, unsigned threads) {
    if (is_facet_kind(kind)) {
        LocalData ld;
        for (std::size_t i = 0; i < p.inequalities().size(); ++i) ld.facets.push_back(facet_data(p, i));
        return make_coefficient(kind, p, ld);
    }
    if (p.dim() < 2) throw std::invalid_argument("codimension-two coefficients need d >= 2");
    return make_coefficient(kind, p, local_data(p, false, threads));
}

}  // namespace

QuasiCoefficient coeff_a_d1(const Polytope& p, unsigned threads) { return build(CoefficientKind::a_d1, p, threads); }
QuasiCoefficient coeff_a_d2(const Polytope& p, unsigned threads) { return build(CoefficientKind::a_d2, p, threads); }
QuasiCoefficient coeff_e_d1(const Polytope& p, unsigned threads) { return build(CoefficientKind::e_d1, p, threads); }
QuasiCoefficient coeff_e_d2(const Polytope& p, unsigned threads) { return build(CoefficientKind::e_d2, p, threads); }

namespace {

void require_integral(const Polytope& p) {
    if (!p.is_integral()) throw std::invalid_argument("polytope must have integer vertices");
}

// B2bar at an integer is 1/6.
Rational integer_bernoulli_part(const CodimTwoData& g) { return bernoulli_part(g, Rational(0)); }

}  // namespace

ExactValue a_d2_integer_form(const Polytope& p) {
    require_integral(p);
    ExactValue s;
    for (auto& g : local_data(p).ridges) {
        ExactValue term(integer_bernoulli_part(g) - dedekind_classic(g.h, g.k));
        term += g.omega() - ExactValue(Rational(1, 4));
        s += term * g.vol_star;
    }
    return s;
}

Rational e_d2_integer_form(const Polytope& p) {
    require_integral(p);
    Rational s;
    for (auto& g : local_data(p).ridges)
        s += g.vol_star * (integer_bernoulli_part(g) - dedekind_classic(g.h, g.k) + Rational(1, 4));
    return s;
}

Rational tetrahedron_identity(const Polytope& p) {
    if (p.dim() != 3 || p.vertices().size() != 4) throw std::invalid_argument("not a tetrahedron");
    require_integral(p);
    LocalData ld = local_data(p);
    Rational s;
    for (auto& g : ld.ridges) {
        Rational ip = g.inner12();
        Rational n1 = norm_sq(to_rational(g.v_F1)), n2 = norm_sq(to_rational(g.v_F2));
        Rational a1 = ld.facets[g.f1].vol_star, a2 = ld.facets[g.f2].vol_star;
        Rational bracket = (-ip / n2 - a2 / (3 * a1)) + (-ip / n1 - a1 / (3 * a2));
        s += g.vol_star / Rational(g.k) * bracket;
    }
    return s;
}

Rational recover_a_d1_from_e(const Polytope& p, const Rational& t) {
    QuasiCoefficient e = coeff_e_d1(p);
    Rational s = -e.eval_any(-t).rational_part();
    for (auto& f : e.facet_terms()) {
        // leading Ehrhart coefficient of the facet at -t: vol*(F) if aff(-tF) meets Z^d
        RatVector v = to_rational(f.v_F);
        EmbeddedLattice dual = projected_integer_lattice(RatMatrix::from_columns({v}, p.dim()));
        RatVector xbar = (f.x_F_dot / norm_sq(v)) * v;
        if (dual.contains((-t) * xbar)) s += Rational(1, 2) * f.vol_star;
    }
    return s;
}

QuasiPolynomialD3::QuasiPolynomialD3(const Polytope& p, Flavor flavor, OracleOptions opts)
    : p_(p),
      flavor_(flavor),
      opts_(opts),
      vol_(p.volume()),
      c2_(flavor == Flavor::solid_angle ? coeff_a_d1(p, opts.threads) : coeff_e_d1(p, opts.threads)),
      c1_(flavor == Flavor::solid_angle ? coeff_a_d2(p, opts.threads) : coeff_e_d2(p, opts.threads)) {
    if (p.dim() != 3) throw std::invalid_argument("complete quasi-polynomial requires d = 3");
}

ExactValue QuasiPolynomialD3::c0(const Rational& t) const {
    if (t.sign() <= 0) throw std::invalid_argument("t must be positive");
    Rational m(p_.denominator());
    Rational t0 = t - Rational(Integer((t / m).ceil() - 1)) * m;
    {
        std::lock_guard<std::mutex> lock(*mutex_);
        auto it = c0_cache_.find(t0);
        if (it != c0_cache_.end()) return it->second;
    }
    ExactValue oracle = flavor_ == Flavor::solid_angle ? solid_angle_sum(p_, t0, opts_).exact
                                                       : ExactValue(Rational(count_points(p_, t0, opts_)));
    ExactValue c = oracle - ExactValue(vol_ * pow(t0, 3)) - c2_.eval(t0) * (t0 * t0) - c1_.eval(t0) * t0;
    std::lock_guard<std::mutex> lock(*mutex_);
    c0_cache_[t0] = c;
    return c;
}

ExactValue QuasiPolynomialD3::value(const Rational& t) const {
    return ExactValue(vol_ * pow(t, 3)) + c2_.eval(t) * (t * t) + c1_.eval(t) * t + c0(t);
}

QuasiPolynomialD3 complete_quasipolynomial_d3(const Polytope& p, Flavor flavor, OracleOptions opts) {
    return QuasiPolynomialD3(p, flavor, opts);
}

}  // namespace eak
