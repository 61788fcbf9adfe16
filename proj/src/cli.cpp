#include "eak/cli.hpp"

#include "eak/coefficients.hpp"
#include "eak/concrete.hpp"
#include "eak/dedekind.hpp"
#include "eak/io.hpp"
#include "eak/lattice_sum.hpp"
#include "eak/parallel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace eak::cli {

namespace {

using io::json;

// Tolerance for Monte Carlo parts of 4-D solid-angle coefficients.
constexpr double kMonteCarloTolerance = 5e-3;
// Series oracle agreement for lattice sums.
constexpr double kSeriesTolerance = 1e-3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string json_path;
    unsigned threads = 0;
    bool timing = false;
};

class Timer {
public:
    void phase(const std::string& name) {
        stop();
        name_ = name;
        start_ = std::chrono::steady_clock::now();
    }
    void stop() {
        if (name_.empty()) return;
        phases_.push_back({name_, std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count()});
        name_.clear();
    }
    json to_json() const {
        json j = json::object();
        for (auto& [n, s] : phases_) j[n] = s;
        return j;
    }
    void print(std::ostream& os) const {
        for (auto& [n, s] : phases_) os << "timing: " << n << " " << std::fixed << std::setprecision(3) << s << " s\n";
        os.unsetf(std::ios::floatfield);
    }

private:
    std::string name_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::pair<std::string, double>> phases_;
};

Rational parse_rational(const std::string& s, const std::string& what) {
    try {
        return Rational::parse(s);
    } catch (const std::invalid_argument&) {
        throw UsageError(what + ": expected a rational \"p/q\" or \"p\", got \"" + s + "\"");
    }
}

std::vector<Rational> parse_positive_list(const std::vector<std::string>& items, const std::string& what) {
    std::vector<Rational> out;
    for (auto& s : items) {
        Rational t = parse_rational(s, what);
        if (t.sign() <= 0) throw UsageError(what + ": t must be positive, got " + s);
        out.push_back(t);
    }
    return out;
}

std::string decimal(const ExactValue& v) { return eval_decimal(v, 256, 15); }

std::string show(const ExactValue& v) {
    if (v.is_rational()) return v.str();
    return v.str() + "  ~ " + decimal(v);
}

// a_d1 -> a_2 in dimension 3
std::string display_name(CoefficientKind k, std::size_t d) {
    std::string s = to_string(k);
    return s.substr(0, 2) + std::to_string(d - (s.back() == '1' ? 1 : 2));
}

std::vector<CoefficientKind> kinds_of(Flavor f) {
    if (f == Flavor::solid_angle) return {CoefficientKind::a_d1, CoefficientKind::a_d2};
    return {CoefficientKind::e_d1, CoefficientKind::e_d2};
}

std::vector<Flavor> parse_flavor(const std::string& s) {
    if (s == "solid-angle") return {Flavor::solid_angle};
    if (s == "ehrhart") return {Flavor::ehrhart};
    return {Flavor::solid_angle, Flavor::ehrhart};
}

QuasiCoefficient build(CoefficientKind k, const Polytope& p, unsigned threads) {
    switch (k) {
        case CoefficientKind::a_d1: return coeff_a_d1(p, threads);
        case CoefficientKind::a_d2: return coeff_a_d2(p, threads);
        case CoefficientKind::e_d1: return coeff_e_d1(p, threads);
        case CoefficientKind::e_d2: return coeff_e_d2(p, threads);
    }
    throw std::logic_error("unknown coefficient kind");
}

json base_report(const std::string& command) { return {{"schema", io::kSchemaVersion}, {"command", command}}; }

void print_polytope(std::ostream& os, const std::string& path, const Polytope& p) {
    os << "polytope " << path << ": dim " << p.dim() << ", " << p.vertices().size() << " vertices, "
       << p.inequalities().size() << " facets, denominator " << p.denominator() << ", volume " << p.volume() << "\n";
}

// ---- analyze / eval ----

int cmd_analyze(const std::string& path, const std::string& flavor_arg, const std::vector<std::string>& eval_args,
                bool dump_local, bool values_only, const Common& c, std::ostream& out, json& report,
                Timer& timer) {
    auto ts = parse_positive_list(eval_args, values_only ? "--t" : "--eval");
    timer.phase("load");
    Polytope p = io::load_polytope(path);
    unsigned threads = resolve_threads(c.threads);
    std::size_t d = p.dim();
    if (d < 2) throw UsageError("coefficients need dimension at least 2");
    report["polytope"] = io::polytope_summary(p);
    if (!values_only) print_polytope(out, path, p);

    timer.phase("coefficients");
    json coeffs = json::array(), evals = json::array(), polys = json::array();
    for (Flavor f : parse_flavor(flavor_arg)) {
        std::vector<QuasiCoefficient> cs;
        for (auto k : kinds_of(f)) cs.push_back(build(k, p, threads));
        for (auto& q : cs) {
            json terms = json::array();
            for (auto& line : q.describe()) terms.push_back(line);
            if (!values_only) {
                out << "\n" << to_string(f) << " " << display_name(q.kind(), d) << "(t), period " << q.period() << "\n";
                for (auto& line : q.describe()) out << "  " << line << "\n";
            }
            coeffs.push_back({{"flavor", to_string(f)},
                              {"kind", to_string(q.kind())},
                              {"name", display_name(q.kind(), d)},
                              {"period", q.period().get_str()},
                              {"terms", terms}});
        }
        if (ts.empty()) continue;
        out << "\n" << to_string(f) << " evaluations\n";
        std::optional<QuasiPolynomialD3> qp;
        OracleOptions oo;
        oo.threads = threads;
        if (d == 3) qp.emplace(p, f, oo);
        for (auto& t : ts) {
            for (auto& q : cs) {
                ExactValue v = q.eval(t);
                out << "  " << display_name(q.kind(), d) << "(" << t << ") = " << show(v) << "\n";
                evals.push_back({{"flavor", to_string(f)}, {"kind", to_string(q.kind())}, {"t", t.str()},
                                 {"value", io::to_json(v)}});
            }
            if (qp) {
                ExactValue v = qp->value(t);
                std::string name = f == Flavor::solid_angle ? "A_P" : "L_P";
                out << "  " << name << "(" << t << ") = " << show(v) << "\n";
                polys.push_back({{"flavor", to_string(f)}, {"t", t.str()}, {"value", io::to_json(v)},
                                 {"constant_term", io::to_json(qp->c0(t))}});
            }
        }
    }
    if (!values_only) report["coefficients"] = coeffs;
    if (!ts.empty()) report["evaluations"] = evals;
    if (!polys.empty()) report["quasipolynomial"] = polys;
    if (dump_local) {
        timer.phase("local data");
        json ld = io::local_data_json(local_data(p, false, threads));
        out << "\nlocal data\n" << ld.dump(2) << "\n";
        report["local_data"] = ld;
    }
    return kExitOk;
}

// ---- verify ----

int cmd_verify(const std::string& path, const std::vector<std::string>& t_args, const Common& c, std::ostream& out,
               json& report, Timer& timer) {
    auto ts = parse_positive_list(t_args, "--t");
    if (ts.empty()) throw UsageError("--t: at least one value required");
    timer.phase("load");
    Polytope p = io::load_polytope(path);
    std::size_t d = p.dim();
    if (d < 2) throw UsageError("coefficients need dimension at least 2");
    OracleOptions oo;
    oo.threads = resolve_threads(c.threads);
    report["polytope"] = io::polytope_summary(p);
    print_polytope(out, path, p);

    timer.phase("formulas");
    std::vector<QuasiCoefficient> cs;
    for (auto k : {CoefficientKind::e_d1, CoefficientKind::e_d2, CoefficientKind::a_d1, CoefficientKind::a_d2})
        cs.push_back(build(k, p, oo.threads));

    timer.phase("oracle");
    out << "\n" << std::left << std::setw(8) << "t" << std::setw(8) << "coeff" << std::setw(24) << "formula"
        << std::setw(24) << "oracle" << "verdict\n";
    json rows = json::array();
    bool all_pass = true;
    for (auto& t : ts) {
        auto e = ehrhart_coefficients_at(p, t, oo);
        auto a = solid_angle_coefficients_at(p, t, oo);
        for (auto& q : cs) {
            std::size_t power = d - (to_string(q.kind()).back() == '1' ? 1 : 2);
            bool solid = q.kind() == CoefficientKind::a_d1 || q.kind() == CoefficientKind::a_d2;
            ExactValue formula = q.eval(t);
            SolidAngleValue oracle = solid ? a[power] : SolidAngleValue{ExactValue(e[power])};
            bool pass = formula == oracle.exact && (!oracle.has_mc || std::abs(oracle.mc) < kMonteCarloTolerance);
            all_pass = all_pass && pass;
            std::string oracle_text = oracle.exact.str();
            if (oracle.has_mc) {
                std::ostringstream os;
                os << oracle_text << " + mc(" << std::setprecision(3) << oracle.mc << ")";
                oracle_text = os.str();
            }
            out << std::setw(8) << t.str() << std::setw(8) << display_name(q.kind(), d) << std::setw(24)
                << formula.str() << std::setw(24) << oracle_text << (pass ? "pass" : "FAIL") << "\n";
            json row = {{"t", t.str()}, {"kind", to_string(q.kind())}, {"formula", io::to_json(formula)},
                        {"oracle", io::to_json(oracle.exact)}, {"pass", pass}};
            if (oracle.has_mc) row["oracle_mc"] = {{"estimate", oracle.mc}, {"std_error", oracle.mc_std_error}};
            rows.push_back(row);
        }
    }
    out << std::right << "\n" << (all_pass ? "all checks passed" : "verification FAILED") << "\n";
    report["checks"] = rows;
    report["pass"] = all_pass;
    return all_pass ? kExitOk : kExitVerificationFailed;
}

// ---- dedekind ----

int cmd_dedekind(const std::vector<std::string>& args, std::ostream& out, json& report) {
    if (args.size() != 2 && args.size() != 4) throw UsageError("dedekind: expected h k [x y]");
    Rational h = parse_rational(args[0], "h"), k = parse_rational(args[1], "k");
    if (!h.is_integer() || !k.is_integer()) throw UsageError("dedekind: h and k must be integers");
    if (k.sign() <= 0 || h.sign() < 0) throw UsageError("dedekind: need h >= 0 and k >= 1");
    Integer g;
    mpz_gcd(g.get_mpz_t(), h.num().get_mpz_t(), k.num().get_mpz_t());
    if (g != 1) throw UsageError("dedekind: h and k must be coprime");
    Rational x = args.size() == 4 ? parse_rational(args[2], "x") : Rational(0);
    Rational y = args.size() == 4 ? parse_rational(args[3], "y") : Rational(0);
    Rational s = dr_sum_fast({h.num(), k.num(), x, y});
    out << s << "\n";
    report["h"] = h.str();
    report["k"] = k.str();
    report["x"] = x.str();
    report["y"] = y.str();
    report["value"] = s.str();
    return kExitOk;
}

// ---- lattice-sum ----

int cmd_lattice_sum(const std::string& path, long series_radius, std::ostream& out, json& report, Timer& timer) {
    timer.phase("load");
    LatticeSumProblem p = io::load_lattice_problem(path);
    std::size_t k = p.w.cols();
    out << "lattice sum " << path << ": rank " << k << " in dimension " << p.x.size() << ", e = (";
    for (std::size_t j = 0; j < k; ++j) out << (j ? "," : "") << p.e[j];
    out << ")\n";

    timer.phase("finite form");
    double value;
    if (k <= 2) {
        LatticeSumParts parts = lattice_sum_parts(p);
        ExactValue v = lattice_sum_finite(p);
        value = eval_numeric(v);
        out << "  index      " << parts.index << "\n"
            << "  interior   " << parts.interior << "\n"
            << "  facets     " << parts.facets << "\n"
            << "  vertices   " << parts.vertices << "\n"
            << "  finite     " << show(v) << "\n";
        report["index"] = parts.index.get_str();
        report["parts"] = {{"interior", io::to_json(parts.interior)},
                           {"facets", io::to_json(parts.facets)},
                           {"vertices", io::to_json(parts.vertices)},
                           {"prefactor", parts.prefactor.str()}};
        report["finite"] = io::to_json(v);
    } else {
        value = lattice_sum_finite_numeric(p);
        out << "  finite     " << std::setprecision(15) << value << " (floating point)\n";
        report["finite_numeric"] = value;
    }

    bool standard_lattice = p.lattice.basis() == RatMatrix::identity(p.x.size());
    if (standard_lattice) {
        try {
            Rational g = lattice_sum_residue_form(p.w, p.e, p.x);
            bool agree = std::abs(g.to_double() - value) <= 1e-12 * std::max(1.0, std::abs(value));
            out << "  residue    " << g << (agree ? "  (agrees)" : "  (DISAGREES)") << "\n";
            report["residue_form"] = g.str();
            if (!agree) {
                report["pass"] = false;
                return kExitVerificationFailed;
            }
        } catch (const std::invalid_argument&) {
            // residue form does not apply (e_j = 1 or W not integral)
        }
    }

    if (series_radius > 0) {
        timer.phase("series");
        double s = lattice_sum_extrapolated(p, kSeriesEpsilons, series_radius);
        bool agree = std::abs(s - value) < kSeriesTolerance;
        out << "  series     " << std::setprecision(10) << s << " (radius " << series_radius << ", |diff| "
            << std::abs(s - value) << ")" << (agree ? "" : "  DISAGREES") << "\n";
        report["series"] = {{"radius", series_radius}, {"value", s}, {"pass", agree}};
        report["pass"] = agree;
        return agree ? kExitOk : kExitVerificationFailed;
    }
    return kExitOk;
}

// ---- concrete ----

int cmd_concrete(const std::string& path, long t_max, std::size_t samples, std::uint64_t seed, const Common& c,
                 std::ostream& out, json& report, Timer& timer) {
    if (t_max < 1) throw UsageError("--tmax must be positive");
    if (samples < 1) throw UsageError("--samples must be positive");
    timer.phase("load");
    Polytope p = io::load_polytope(path);
    if (p.dim() > 3) throw UsageError("concreteness checks support dimension at most 3");
    unsigned threads = resolve_threads(c.threads);
    report["polytope"] = io::polytope_summary(p);
    print_polytope(out, path, p);

    bool symmetric = p.is_integral() && centrally_symmetric_facets(p);
    out << "  integer polytope with centrally symmetric facets: " << (symmetric ? "yes" : "no") << "\n";
    report["symmetric_facets"] = symmetric;

    timer.phase("solid-angle sums");
    OracleOptions oo;
    oo.threads = threads;
    ConcreteReport cr = is_concrete(p, t_max, oo);
    json cj = {{"t_max", t_max}, {"concrete", cr.concrete}, {"undecided", cr.undecided}};
    if (cr.concrete) {
        out << "  A_P(t) = vol t^" << p.dim() << " for t = 1.." << t_max << ": yes\n";
    } else {
        out << "  A_P(t) = vol t^" << p.dim() << " fails at t = " << *cr.first_failure << ", defect "
            << show(cr.defect) << (cr.undecided ? " (numerically zero; undecided)" : "") << "\n";
        cj["first_failure"] = *cr.first_failure;
        cj["defect"] = io::to_json(cr.defect);
    }
    report["concreteness"] = cj;

    timer.phase("multi-tiling");
    TilingReport tr = symmetrized_multitiling_level(p, {samples, seed, threads});
    json wit = json::array();
    std::size_t shown = std::min<std::size_t>(tr.witnesses.size(), tr.constant ? 4 : 2);
    for (std::size_t i = 0; i < shown; ++i)
        wit.push_back({{"point", io::to_json(tr.witnesses[i].point)}, {"multiplicity", tr.witnesses[i].multiplicity}});
    if (tr.constant) {
        out << "  symmetrized multi-tiling: level " << tr.level << " at all " << tr.samples << " sampled points\n";
    } else {
        out << "  symmetrized multi-tiling: not constant (";
        for (std::size_t i = 0; i < shown; ++i)
            out << (i ? ", " : "") << "multiplicity " << tr.witnesses[i].multiplicity << " at "
                << to_string(tr.witnesses[i].point);
        out << ")\n";
    }
    report["tiling"] = {{"samples", tr.samples}, {"seed", seed}, {"constant", tr.constant},
                        {"level", tr.constant ? json(tr.level) : json(nullptr)}, {"witnesses", wit}};

    // Either sufficient condition without concreteness is a contradiction.
    bool consistent = cr.concrete || cr.undecided || (!tr.constant && !symmetric);
    if (!consistent) out << "  INCONSISTENT: a sufficient condition holds but the polytope is not concrete\n";
    report["pass"] = consistent;
    return consistent ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quasi-coefficients of Ehrhart and solid-angle sums of rational polytopes", "eak"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    app.add_option("--json", c.json_path, "Write the machine-readable report here (- for stdout)");
    app.add_option("--threads", c.threads, "Worker threads (default: EAK_THREADS, then all cores)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--timing", c.timing, "Report per-phase wall time");

    std::string poly_path, flavor = "both";
    std::vector<std::string> eval_ts, verify_ts, dedekind_args;
    bool dump_local = false;
    auto* analyze = app.add_subcommand("analyze", "Closed-form coefficient tables and exact evaluations");
    analyze->add_option("polytope", poly_path, "Polytope JSON file")->required();
    analyze->add_option("--flavor", flavor)->check(CLI::IsMember({"solid-angle", "ehrhart", "both"}));
    analyze->add_option("--eval", eval_ts, "Evaluate at t (repeatable, p/q)")->allow_extra_args(false)->delimiter(',');
    analyze->add_flag("--dump-local", dump_local, "Emit per-face local data");

    auto* eval = app.add_subcommand("eval", "Coefficient and quasi-polynomial values at t");
    eval->add_option("polytope", poly_path, "Polytope JSON file")->required();
    eval->add_option("--t", eval_ts, "Values of t (repeatable, p/q)")->required()->allow_extra_args(false)->delimiter(',');
    eval->add_option("--flavor", flavor)->check(CLI::IsMember({"solid-angle", "ehrhart", "both"}));

    auto* verify = app.add_subcommand("verify", "Compare closed forms against lattice-point oracles");
    verify->add_option("polytope", poly_path, "Polytope JSON file")->required();
    verify->add_option("--t", verify_ts, "Values of t (repeatable, p/q)")->required()->allow_extra_args(false)->delimiter(',');

    auto* dedekind = app.add_subcommand("dedekind", "Dedekind-Rademacher sum s(h,k;x,y)");
    dedekind->add_option("args", dedekind_args, "h k [x y]")->required();

    std::string problem_path;
    long series_radius = 0;
    auto* lsum = app.add_subcommand("lattice-sum", "Finite form of a regularized lattice sum");
    lsum->add_option("problem", problem_path, "Problem JSON file")->required();
    lsum->add_option("--series-radius", series_radius, "Also run the series oracle with this cutoff radius (800 is ample)");

    long t_max = 4;
    std::size_t samples = 256;
    std::uint64_t seed = 0x7111;
    auto* concrete = app.add_subcommand("concrete", "Concreteness and symmetrized multi-tiling checks");
    concrete->add_option("polytope", poly_path, "Polytope JSON file")->required();
    concrete->add_option("--tmax", t_max, "Check t = 1..N");
    concrete->add_option("--samples", samples, "Multi-tiling sample points");
    concrete->add_option("--seed", seed, "Multi-tiling sampler seed");

    std::vector<const char*> argv = {"eak"};
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    std::ofstream sink;  // unopened: discards output
    bool json_stdout = c.json_path == "-";
    std::ostream& human = json_stdout ? static_cast<std::ostream&>(sink) : out;
    Timer timer;
    int code = kExitOk;
    json report;
    try {
        if (*analyze || *eval) {
            bool values_only = bool(*eval);
            report = base_report(values_only ? "eval" : "analyze");
            code = cmd_analyze(poly_path, flavor, eval_ts, dump_local, values_only, c, human, report, timer);
        } else if (*verify) {
            report = base_report("verify");
            code = cmd_verify(poly_path, verify_ts, c, human, report, timer);
        } else if (*dedekind) {
            report = base_report("dedekind");
            code = cmd_dedekind(dedekind_args, human, report);
        } else if (*lsum) {
            report = base_report("lattice-sum");
            code = cmd_lattice_sum(problem_path, series_radius, human, report, timer);
        } else if (*concrete) {
            report = base_report("concrete");
            code = cmd_concrete(poly_path, t_max, samples, seed, c, human, report, timer);
        }
    } catch (const io::InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    timer.stop();
    if (c.timing) {
        timer.print(err);
        report["timing"] = timer.to_json();
    }
    if (!c.json_path.empty()) {
        std::string text = io::dump_report(report);
        if (json_stdout) {
            out << text;
        } else {
            std::ofstream f(c.json_path, std::ios::binary);
            if (!(f << text)) {
                err << "error: cannot write " << c.json_path << "\n";
                return kExitInputError;
            }
        }
    }
    return code;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace eak::cli
