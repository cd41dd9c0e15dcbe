#pragma once

#include "hypsob/conformal.hpp"
#include "hypsob/constants.hpp"
#include "hypsob/errors.hpp"
#include "hypsob/euler_lagrange.hpp"
#include "hypsob/numeric_lab.hpp"
#include "hypsob/operator.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace hypsob::cli {

using json = nlohmann::ordered_json;

enum class Output { json, csv, text };

struct RunConfig {
    std::string subcommand;
    std::optional<int> n;
    std::optional<int> k;
    std::optional<double> beta;
    std::vector<double> beta_list;
    double rel_tol = 1e-10;
    double cutoff = 40.0;
    std::optional<int> jet_order;
    Output output = Output::text;
    std::uint64_t seed = 1;
    std::string suite = "all";
    bool symbolic = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;

/// 15 significant digits, shared by every output format.
inline std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

/// JSON number rounded to 15 significant digits; non-finite values become null.
inline json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return std::stod(fmt(v));
}

inline Output parse_output(const std::string& s) {
    if (s == "json") return Output::json;
    if (s == "csv") return Output::csv;
    if (s == "text") return Output::text;
    throw UsageError("unknown output format '" + s + "'");
}

inline int require_k(const RunConfig& c) {
    if (!c.k) throw UsageError(c.subcommand + " requires --k");
    if (*c.k < 1) throw DomainError("k must be >= 1");
    return *c.k;
}

inline int require_n(const RunConfig& c, int k) {
    if (!c.n) throw UsageError(c.subcommand + " requires --n");
    require_dimension(*c.n, k);
    return *c.n;
}

/// Uniform doubles in [0, 1) from a fixed engine, identical on every platform.
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : eng_(seed) {}
    double operator()() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

/// Sorted random radii in the central 90% of the bump support.
inline std::vector<double> seeded_bump_points(const Bump& b, int count, std::uint64_t seed) {
    SeededUniform u(seed);
    std::vector<double> pts;
    for (int i = 0; i < count; ++i) pts.push_back(b.center + b.radius * 0.9 * (2.0 * u() - 1.0));
    std::sort(pts.begin(), pts.end());
    return pts;
}

// ---------------------------------------------------------------------------

inline int run_coeffs(const RunConfig& c, std::ostream& out) {
    const int k = require_k(c);
    if (c.n) require_dimension(*c.n, k);
    const OperatorPoly op = standard_operator(k);
    const DimPoly b = b_constant(k);
    const bool with_values = c.n && !c.symbolic;

    if (c.output == Output::json) {
        json doc;
        doc["k"] = k;
        if (c.n) doc["n"] = *c.n;
        json coeffs = json::array();
        for (int m = 0; m <= k; ++m) {
            json e;
            e["m"] = m;
            e["name"] = coefficient_name(k, m);
            e["poly"] = serialize(op.coefficient(m));
            e["rendered"] = render(op.coefficient(m));
            if (with_values) e["value"] = op.coefficient(m)(Rational(*c.n)).to_string();
            coeffs.push_back(e);
        }
        doc["coefficients"] = coeffs;
        doc["b"] = {{"poly", serialize(b)}, {"rendered", render(b)}};
        if (with_values) doc["b"]["value"] = b(Rational(*c.n)).to_string();
        doc["a0_identity"] = verify_a0_identity(k);
        out << doc.dump(2) << "\n";
    } else if (c.output == Output::csv) {
        out << "m,name,poly,rendered" << (with_values ? ",value" : "") << "\n";
        for (int m = 0; m <= k; ++m) {
            out << m << "," << coefficient_name(k, m) << ",\"" << serialize(op.coefficient(m)) << "\",\""
                << render(op.coefficient(m)) << "\"";
            if (with_values) out << "," << op.coefficient(m)(Rational(*c.n)).to_string();
            out << "\n";
        }
    } else {
        for (int m = 0; m <= k; ++m) {
            out << coefficient_name(k, m) << " = " << render(op.coefficient(m));
            if (with_values) out << "  [n=" << *c.n << ": " << op.coefficient(m)(Rational(*c.n)).to_string() << "]";
            out << "\n";
        }
        out << "b_" << k << " = " << render(b);
        if (with_values) out << "  [n=" << *c.n << ": " << b(Rational(*c.n)).to_string() << "]";
        out << "\n";
    }
    return kExitOk;
}

inline int run_constants(const RunConfig& c, std::ostream& out) {
    const int k = require_k(c);
    const int n = require_n(c, k);
    const ConstantsRecord r = constants_record(n, k);
    const double resid = consistency_residual(n, k);
    if (c.output == Output::json) {
        json doc;
        doc["n"] = n;
        doc["k"] = k;
        doc["q"] = r.q.to_string();
        doc["omega_n"] = num(r.omega_n);
        doc["lambda_k"] = num(r.lambda_k);
        doc["sharp_value"] = num(1.0 / r.lambda_k);
        doc["b_k"] = r.b_k.to_string();
        doc["consistency_residual"] = num(resid);
        out << doc.dump(2) << "\n";
    } else if (c.output == Output::csv) {
        out << "n,k,q,omega_n,lambda_k,sharp_value,b_k,consistency_residual\n";
        out << n << "," << k << "," << r.q.to_string() << "," << fmt(r.omega_n) << "," << fmt(r.lambda_k) << ","
            << fmt(1.0 / r.lambda_k) << "," << r.b_k.to_string() << "," << fmt(resid) << "\n";
    } else {
        out << "n: " << n << "\nk: " << k << "\nq: " << r.q.to_string() << "\nomega_n: " << fmt(r.omega_n)
            << "\nlambda_k: " << fmt(r.lambda_k) << "\nsharp_value: " << fmt(1.0 / r.lambda_k) << "\nb_k: " << r.b_k.to_string()
            << "\nconsistency_residual: " << fmt(resid) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Verification suites.

struct Check {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;
};

inline void suite_el(int k, std::vector<Check>& checks) {
    try {
        el_residual(k);
        checks.push_back({"el", "residual", true, "0 (exact)"});
    } catch (const NonzeroResidual& e) {
        checks.push_back({"el", "residual", false, std::string("nonzero, ") + e.what()});
    }
    const ElSolution s = el_solve(k);
    const OperatorPoly op = standard_operator(k);
    bool match = s.polynomial() && s.b.as_polynomial() == b_constant(k);
    for (int m = 0; match && m < k; ++m) match = s.a[static_cast<std::size_t>(m)].as_polynomial() == op.coefficient(m);
    checks.push_back({"el", "linear system", match,
                      std::to_string(s.equations) + " equations, " + std::to_string(s.surplus_equations) +
                          " surplus vanish, solution " + (match ? "equals" : "differs from") + " P_k and b_k"});
    const auto iv = el_solve_interpolated(k);
    bool imatch = iv.back() == b_constant(k);
    for (int m = 0; imatch && m < k; ++m) imatch = iv[static_cast<std::size_t>(m)] == op.coefficient(m);
    checks.push_back({"el", "interpolation route", imatch, imatch ? "agrees" : "disagrees"});
}

inline void suite_euclid_el(int k, std::vector<Check>& checks) {
    try {
        euclid_el_residual(k);
        checks.push_back({"euclid-el", "residual", true, "0 (exact)"});
    } catch (const NonzeroResidual& e) {
        checks.push_back({"euclid-el", "residual", false, std::string("nonzero, ") + e.what()});
    }
}

inline void suite_recursion(int k, std::vector<Check>& checks) {
    checks.push_back({"recursion", "a0 identity", verify_a0_identity(k), "(-1)^k a_{k0} - b_k = 0"});
    if (k >= 2) {
        const bool ok = standard_operator(k) == standard_operator(k - 1) * shifted_first_operator(k);
        checks.push_back({"recursion", "product", ok, ok ? "P_k = P_{k-1} (P_1 + k(k-1))" : "product differs"});
    }
    DimPoly roots;
    for (int j = 1; j <= k; ++j) roots += yamabe_shift() + DimPoly(Rational(j * (j - 1)));
    // Subleading coefficient of a monic product of linear factors.
    const bool ok = standard_operator(k).coefficient(k - 1) == roots;
    checks.push_back({"recursion", "sum of shifts", ok, ok ? "a_{k,k-1} = sum of factor shifts" : "mismatch"});
}

inline void suite_constants(int k, std::optional<int> n, std::vector<Check>& checks) {
    double worst = 0.0;
    const int lo = n ? *n : 2 * k + 1, hi = n ? *n : std::max(20, 2 * k + 1);
    for (int d = lo; d <= hi; ++d) worst = std::max(worst, std::abs(consistency_residual(d, k)));
    checks.push_back({"constants", "consistency", worst <= 1e-12, "max |b_k Lambda_k omega_n^(2k/n) - 1| = " + fmt(worst)});
    double g = 0.0;
    for (int d = 3; d <= 30; ++d) g = std::max(g, std::abs(gamma_identity_residual(d)));
    checks.push_back({"constants", "gamma identity", g <= 1e-12, "max relative defect = " + fmt(g)});
}

inline void suite_conformal(int k, std::optional<int> n_opt, std::optional<int> jet, std::uint64_t seed,
                            std::vector<Check>& checks) {
    const int n = n_opt ? *n_opt : 2 * k + 3;
    require_dimension(n, k);
    const int J = jet ? *jet : 2 * k + 4;
    const Bump bump{1.0, 0.8};
    const double rb = conformal_law_residual(n, k, bump, seeded_bump_points(bump, 20, seed), J);
    checks.push_back({"conformal", "bump", rb <= 1e-6, "residual " + fmt(rb)});
    const double rc = conformal_law_residual(n, k, RadialTestFunction{ConstantFunction{}}, {0.25, 0.5, 1.0, 2.0}, J);
    checks.push_back({"conformal", "constant", rc <= 1e-12, "residual " + fmt(rc)});
    const double re =
        conformal_law_residual(n, k, RadialTestFunction{ExtremalFunction{0.5}}, {0.25, 0.5, 1.0, 2.0, 4.0}, J);
    checks.push_back({"conformal", "extremal", re <= 1e-10, "residual " + fmt(re)});
}

inline int run_verify(const RunConfig& c, std::ostream& out) {
    const int k = require_k(c);
    if (c.n) require_dimension(*c.n, k);
    static const std::vector<std::string> known = {"el", "euclid-el", "recursion", "constants", "conformal", "all"};
    if (std::find(known.begin(), known.end(), c.suite) == known.end())
        throw UsageError("unknown suite '" + c.suite + "'");
    std::vector<Check> checks;
    const bool all = c.suite == "all";
    if (all || c.suite == "el") suite_el(k, checks);
    if (all || c.suite == "euclid-el") suite_euclid_el(k, checks);
    if (all || c.suite == "recursion") suite_recursion(k, checks);
    if (all || c.suite == "constants") suite_constants(k, c.n, checks);
    if (all || c.suite == "conformal") suite_conformal(k, c.n, c.jet_order, c.seed, checks);

    bool passed = true;
    for (const auto& ch : checks) passed = passed && ch.passed;

    if (c.output == Output::json) {
        json doc;
        doc["suite"] = c.suite;
        doc["k"] = k;
        json arr = json::array();
        for (const auto& ch : checks)
            arr.push_back({{"suite", ch.suite}, {"check", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
        doc["checks"] = arr;
        doc["passed"] = passed;
        out << doc.dump(2) << "\n";
    } else if (c.output == Output::csv) {
        out << "suite,check,passed,detail\n";
        for (const auto& ch : checks)
            out << ch.suite << "," << ch.name << "," << (ch.passed ? "true" : "false") << ",\"" << ch.detail << "\"\n";
    } else {
        std::string current;
        for (const auto& ch : checks) {
            if (ch.suite != current) {
                current = ch.suite;
                out << "suite: " << current << " (k = " << k << ")\n";
            }
            out << ch.name << ": " << ch.detail << (ch.passed ? "" : "  [FAILED]") << "\n";
        }
        out << "status: " << (passed ? "verified" : "FAILED") << "\n";
    }
    return passed ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------
// Quotients.

inline std::vector<double> betas_of(const RunConfig& c) {
    if (!c.beta_list.empty()) return c.beta_list;
    if (c.beta) return {*c.beta};
    throw UsageError(c.subcommand + " requires --beta or --beta-list");
}

inline void emit_reports(const RunConfig& c, int n, int k, const std::vector<QuotientReport>& reps,
                         std::ostream& out) {
    if (c.output == Output::csv) {
        out << "beta,integral_uq,quotient,sharp_value,gap,err_estimate\n";
        for (const auto& r : reps)
            out << fmt(r.params.beta) << "," << fmt(r.integral_uq) << "," << fmt(r.quotient) << ","
                << fmt(r.sharp_value) << "," << fmt(r.gap) << "," << fmt(r.err_estimate) << "\n";
    } else if (c.output == Output::json) {
        json doc;
        doc["n"] = n;
        doc["k"] = k;
        json arr = json::array();
        for (const auto& r : reps)
            arr.push_back({{"beta", num(r.params.beta)},
                           {"integral_uq", num(r.integral_uq)},
                           {"quotient", num(r.quotient)},
                           {"sharp_value", num(r.sharp_value)},
                           {"gap", num(r.gap)},
                           {"relative_gap", num(r.relative_gap)},
                           {"err_estimate", num(r.err_estimate)}});
        doc["reports"] = arr;
        out << doc.dump(2) << "\n";
    } else {
        for (const auto& r : reps)
            out << "beta=" << fmt(r.params.beta) << " integral_uq=" << fmt(r.integral_uq)
                << " quotient=" << fmt(r.quotient) << " sharp_value=" << fmt(r.sharp_value) << " gap=" << fmt(r.gap)
                << "\n";
    }
}

inline int run_quotient(const RunConfig& c, std::ostream& out) {
    const int k = require_k(c);
    const int n = require_n(c, k);
    emit_reports(c, n, k, quotient_curve(n, k, betas_of(c), c.rel_tol), out);
    return kExitOk;
}

inline int run_euclid_quotient(const RunConfig& c, std::ostream& out) {
    const int k = require_k(c);
    const int n = require_n(c, k);
    std::vector<QuotientReport> reps;
    for (double b : betas_of(c)) reps.push_back(euclidean_ball_quotient(make_params(n, k, b), c.rel_tol));
    emit_reports(c, n, k, reps, out);
    return kExitOk;
}

inline int run_conformal(const RunConfig& c, std::ostream& out) {
    const int k = require_k(c);
    const int n = require_n(c, k);
    const int J = c.jet_order ? *c.jet_order : 2 * k + 4;
    const Bump bump{1.0, 0.8};
    RadialTestFunction u{bump};
    std::vector<double> pts = seeded_bump_points(bump, 20, c.seed);
    if (c.beta) {
        make_params(n, k, *c.beta);
        u = ExtremalFunction{*c.beta};
    }
    const ConformalReport rep = conformal_law_report(n, k, u, pts, J);
    if (c.output == Output::json) {
        json doc;
        doc["n"] = n;
        doc["k"] = k;
        doc["jet_order"] = J;
        doc["function"] = c.beta ? "extremal" : "bump";
        json arr = json::array();
        for (const auto& p : rep.points)
            arr.push_back({{"r", num(p.r)}, {"hyperbolic_side", num(p.hyperbolic_side)}, {"flat_side", num(p.flat_side)}});
        doc["points"] = arr;
        doc["residual"] = num(rep.residual);
        out << doc.dump(2) << "\n";
    } else if (c.output == Output::csv) {
        out << "r,hyperbolic_side,flat_side\n";
        for (const auto& p : rep.points) out << fmt(p.r) << "," << fmt(p.hyperbolic_side) << "," << fmt(p.flat_side) << "\n";
    } else {
        out << "points: " << rep.points.size() << "\njet_order: " << J << "\nresidual: " << fmt(rep.residual) << "\n";
    }
    return kExitOk;
}

inline json quadrature_json(const QuadratureResult& r) {
    return {{"value", num(r.value)},
            {"error_estimate", num(r.error_estimate)},
            {"subdivisions", r.subdivisions},
            {"endpoint_exponents", {num(r.endpoint_exponents.first), num(r.endpoint_exponents.second)}},
            {"converged", r.converged},
            {"divergent", r.divergent}};
}

inline int run_thm33_probe(const RunConfig& c, std::ostream& out) {
    const int k = require_k(c);
    const int n = require_n(c, k);
    if (!(n > 4 * k - 2)) throw DomainError("thm33-probe requires n > 4k - 2");
    if (!c.beta) throw UsageError("thm33-probe requires --beta");
    if (!(c.cutoff > 0.0)) throw DomainError("cutoff must be positive");
    const ExtremalParams p = make_params(n, k, *c.beta);
    const DisplayedIntegrals shown = paper_integrals_thm33(p, c.rel_tol);
    const double R = c.cutoff;
    const GrowthFit fit = energy_growth_rate(p, 0, {R / 2.0, 3.0 * R / 4.0, R}, c.rel_tol);
    std::vector<double> energies;
    for (int m = 0; m <= k; ++m) energies.push_back(truncated_energy(p, m, R, c.rel_tol).value);
    const std::vector<Rational> a = instantiate(standard_operator(k), Rational(n));
    std::vector<double> tau;
    for (int m = 0; m < k; ++m) tau.push_back(a[static_cast<std::size_t>(m)].to_double());
    const double standard = perturbed_quotient_probe(p, k - 1, tau, R, c.rel_tol);
    tau.back() -= 1.0;
    const double lowered = perturbed_quotient_probe(p, k - 1, tau, R, c.rel_tol);
    const double sharp = 1.0 / best_constant(n, k);

    if (c.output == Output::json) {
        json doc;
        doc["n"] = n;
        doc["k"] = k;
        doc["beta"] = num(*c.beta);
        doc["cutoff"] = num(R);
        doc["displayed_l2"] = quadrature_json(shown.l2);
        doc["displayed_gradient"] = quadrature_json(shown.gradient);
        json e = json::array();
        for (double v : energies) e.push_back(num(v));
        doc["truncated_energies"] = e;
        doc["l2_growth_rate"] = num(fit.rate);
        doc["expected_growth_rate"] = 2 * k - 1;
        doc["probe_standard"] = num(standard);
        doc["probe_lowered"] = num(lowered);
        doc["sharp_value"] = num(sharp);
        out << doc.dump(2) << "\n";
    } else {
        out << "displayed L2 integral: " << (shown.l2.divergent ? "divergent" : fmt(shown.l2.value))
            << " (endpoint exponent " << fmt(shown.l2.endpoint_exponents.second) << ")\n";
        out << "displayed gradient integral: " << (shown.gradient.divergent ? "divergent" : fmt(shown.gradient.value))
            << " (endpoint exponent " << fmt(shown.gradient.endpoint_exponents.second) << ")\n";
        for (int m = 0; m <= k; ++m)
            out << "truncated energy m=" << m << ": " << fmt(energies[static_cast<std::size_t>(m)]) << "\n";
        out << "L2 growth rate: " << fmt(fit.rate) << " (power counting " << 2 * k - 1 << ")\n";
        out << "probe standard: " << fmt(standard) << "\nprobe lowered: " << fmt(lowered)
            << "\nsharp value: " << fmt(sharp) << "\n";
    }
    return kExitOk;
}

inline int exit_code_for(const Error& e) {
    const std::string code = e.code();
    if (code == "NonzeroResidual" || code == "SurplusNonzero" || code == "VerificationFailure") return kExitVerification;
    return kExitUsage;
}

inline void emit_error(std::ostream& out, const std::string& code, const std::string& message) {
    json doc;
    doc["error"] = {{"code", code}, {"message", message}};
    out << doc.dump(2) << "\n";
}

/// Executes one configured command. Library errors become a JSON error
/// document on `out` with exit status 1, or 2 for failed verifications.
inline int run(const RunConfig& c, std::ostream& out) {
    try {
        if (!(c.rel_tol > 0.0)) throw UsageError("--rel-tol must be positive");
        if (c.subcommand == "coeffs") return run_coeffs(c, out);
        if (c.subcommand == "constants") return run_constants(c, out);
        if (c.subcommand == "verify") return run_verify(c, out);
        if (c.subcommand == "quotient") return run_quotient(c, out);
        if (c.subcommand == "euclid-quotient") return run_euclid_quotient(c, out);
        if (c.subcommand == "conformal") return run_conformal(c, out);
        if (c.subcommand == "thm33-probe") return run_thm33_probe(c, out);
        throw UsageError("unknown subcommand '" + c.subcommand + "'");
    } catch (const Error& e) {
        emit_error(out, e.code(), e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        emit_error(out, "InternalError", e.what());
        return kExitUsage;
    }
}

}  // namespace hypsob::cli
