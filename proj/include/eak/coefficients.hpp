#pragma once

#include "eak/local_data.hpp"
#include "eak/oracle.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace eak {

enum class CoefficientKind { a_d1, a_d2, e_d1, e_d2 };
std::string to_string(CoefficientKind k);

// A quasi-coefficient given as a sum of per-face closed-form terms.
class QuasiCoefficient {
public:
    QuasiCoefficient(CoefficientKind kind, std::vector<FacetData> facets,
                     std::vector<CodimTwoData> ridges, Integer period);

    CoefficientKind kind() const { return kind_; }
    const std::vector<FacetData>& facet_terms() const { return facets_; }
    const std::vector<CodimTwoData>& ridge_terms() const { return ridges_; }
    const Integer& period() const { return period_; }

    // t > 0
    ExactValue eval(const Rational& t) const;
    // Same closed form at any rational t, including t <= 0.
    ExactValue eval_any(const Rational& t) const;
    // Contribution of each face, in face order.
    std::vector<ExactValue> term_values(const Rational& t) const;
    // One line per face: tight-set label and the closed-form term.
    std::vector<std::string> describe() const;

private:
    CoefficientKind kind_;
    std::vector<FacetData> facets_;
    std::vector<CodimTwoData> ridges_;
    Integer period_;
};

QuasiCoefficient coeff_a_d1(const Polytope& p, unsigned threads = 1);
QuasiCoefficient coeff_a_d2(const Polytope& p, unsigned threads = 1);
QuasiCoefficient coeff_e_d1(const Polytope& p, unsigned threads = 1);
QuasiCoefficient coeff_e_d2(const Polytope& p, unsigned threads = 1);
// Assembled from given local data (e.g. with swapped facet order).
QuasiCoefficient make_coefficient(CoefficientKind kind, const Polytope& p, const LocalData& ld);

// Per-face terms of a codimension-two face at t.
ExactValue a_d2_term(const CodimTwoData& g, const Rational& t);
Rational e_d2_term(const CodimTwoData& g, const Rational& t);

// Integer polytope and integer t: the same coefficients with every periodic
// function evaluated at an integer.
ExactValue a_d2_integer_form(const Polytope& p);
Rational e_d2_integer_form(const Polytope& p);

// Sum over edges of an integer tetrahedron; zero for every integer tetrahedron.
Rational tetrahedron_identity(const Polytope& p);

// a_{d-1}(t) rebuilt from the Ehrhart data of P and of its facets at -t.
Rational recover_a_d1_from_e(const Polytope& p, const Rational& t);

enum class Flavor { solid_angle, ehrhart };
std::string to_string(Flavor f);

// vol t^3 + c2(t) t^2 + c1(t) t + c0(t) for d = 3. c0 comes from one oracle
// evaluation per residue class of t modulo the denominator, cached.
class QuasiPolynomialD3 {
public:
    QuasiPolynomialD3(const Polytope& p, Flavor flavor, OracleOptions opts = {});

    Flavor flavor() const { return flavor_; }
    const Rational& vol() const { return vol_; }
    const QuasiCoefficient& c2() const { return c2_; }
    const QuasiCoefficient& c1() const { return c1_; }
    ExactValue c0(const Rational& t) const;
    ExactValue value(const Rational& t) const;

private:
    Polytope p_;
    Flavor flavor_;
    OracleOptions opts_;
    Rational vol_;
    QuasiCoefficient c2_, c1_;
    mutable std::map<Rational, ExactValue> c0_cache_;
    mutable std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

QuasiPolynomialD3 complete_quasipolynomial_d3(const Polytope& p, Flavor flavor,
                                              OracleOptions opts = {});

}  // namespace eak
