#pragma once

#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sobolab/discrete.hpp"
#include "sobolab/interp.hpp"
#include "sobolab/norms.hpp"
#include "sobolab/studies.hpp"
#include "sobolab/version.hpp"

namespace sobolab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Catalog addressing: "name" or "name:key=val,key=val".
// ---------------------------------------------------------------------------

namespace detail {

inline std::map<std::string, double> parse_kv(const std::string& s) {
    std::map<std::string, double> kv;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("catalog spec: expected key=value in '" + item + "'");
        kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return kv;
}

inline double take(std::map<std::string, double>& kv, const std::string& key, double fallback,
                   bool required = false) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (required) throw std::invalid_argument("catalog spec: missing parameter '" + key + "'");
        return fallback;
    }
    double v = it->second;
    kv.erase(it);
    return v;
}

inline void expect_empty(const std::map<std::string, double>& kv, const std::string& what) {
    if (!kv.empty())
        throw std::invalid_argument("catalog spec '" + what + "': unknown parameter '" +
                                    kv.begin()->first + "'");
}

}  // namespace detail

inline Weight parse_weight(const std::string& spec, int dim) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    auto kv = colon == std::string::npos ? std::map<std::string, double>{}
                                         : detail::parse_kv(spec.substr(colon + 1));
    std::vector<double> params;
    if (name == "gauss" || name == "exp_lin") params = {detail::take(kv, "a", 1.0, true)};
    if (name == "poly") params = {detail::take(kv, "alpha", 1.0, true)};
    if (name == "oscillatory")
        params = {detail::take(kv, "alpha", 1.0, true), detail::take(kv, "beta", 2.0, true)};
    detail::expect_empty(kv, spec);
    return make_catalog_weight(name, params, dim);
}

inline TestFunction parse_field(const std::string& spec, int dim) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    auto kv = colon == std::string::npos ? std::map<std::string, double>{}
                                         : detail::parse_kv(spec.substr(colon + 1));
    if (name == "bump") {
        double radius = detail::take(kv, "radius", 1.0);
        double height = detail::take(kv, "height", 1.0);
        double center = detail::take(kv, "center", 0.0);
        detail::expect_empty(kv, spec);
        Vec c(dim);
        for (int i = 0; i < dim; ++i) c[i] = center;
        return make_bump(c, radius, height);
    }
    if (name == "hat") {
        double radius = detail::take(kv, "radius", 1.0);
        double ramp = detail::take(kv, "ramp", 1.0);
        double height = detail::take(kv, "height", 1.0);
        detail::expect_empty(kv, spec);
        return make_hat(dim, radius, ramp, height);
    }
    if (name == "cutoff") {
        int n = int(detail::take(kv, "n", 1.0, true));
        detail::expect_empty(kv, spec);
        return cutoff_xi(n, dim);
    }
    throw std::invalid_argument("unknown catalog test function: " + name);
}

// ---------------------------------------------------------------------------
// Scenario records
// ---------------------------------------------------------------------------

struct ScenarioResult {
    std::string id;
    std::string kind;
    json report;
    bool ok = true;
    std::string fail_reason;
};

namespace detail {

inline json quantity_json(double value, Status status,
                          const std::vector<std::pair<double, double>>& trace = {},
                          double error_estimate = -1.0) {
    json q;
    q["value"] = value;
    q["status"] = to_string(status);
    if (error_estimate >= 0) q["error_estimate"] = error_estimate;
    if (!trace.empty()) {
        json t = json::array();
        for (auto& [r, v] : trace) t.push_back({r, v});
        q["trace"] = t;
    }
    return q;
}

inline void add_claims(json& rep, const std::vector<Claim>& claims) {
    json arr = json::array();
    for (const auto& c : claims) {
        json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        arr.push_back(jc);
    }
    rep["claims"] = arr;
}

inline QuadratureSpec spec_from_params(const json& params, int dim) {
    QuadratureSpec spec = QuadratureSpec::defaults(dim);
    if (params.contains("points_per_axis")) spec.points_per_axis = params["points_per_axis"];
    if (params.contains("rel_tol")) spec.rel_tol = params["rel_tol"];
    if (params.contains("growth_threshold")) spec.growth_threshold = params["growth_threshold"];
    if (params.contains("max_radius_exp")) {
        spec.radii.clear();
        int kmax = params["max_radius_exp"];
        for (int k = 0; k <= kmax; ++k) spec.radii.push_back(std::ldexp(1.0, k));
    }
    return spec;
}

inline WeightPair pair_from_params(const json& params, int dim) {
    if (!params.contains("pair") || !params["pair"].is_array() || params["pair"].size() != 2)
        throw std::invalid_argument("scenario: 'pair' must be an array of two weight specs");
    return make_weight_pair(parse_weight(params["pair"][0], dim),
                            parse_weight(params["pair"][1], dim));
}

}  // namespace detail


namespace detail {

// Reads a parameter, falling back to a default, and writes the resolved
// value back so reports echo the full effective parameter set.
template <typename T>
T resolved(json& params, const std::string& key, T fallback) {
    T v = params.value(key, fallback);
    params[key] = v;
    return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Per-kind runners. Each fills report["quantities"] and a claims list.
// ---------------------------------------------------------------------------

namespace runners {

inline std::vector<Claim> run_cp(json& params, json& quantities) {
    double p = params.at("p");
    CpResult cp = cp_constant(p);
    quantities["cp"] = detail::quantity_json(cp.value, Status::converged);
    quantities["argmin_beta"] = detail::quantity_json(cp.beta, Status::converged);
    std::vector<Claim> claims;
    claims.push_back({"cp_gt_2", cp.value > 2.0, "cp=" + std::to_string(cp.value)});
    return claims;
}

inline std::vector<Claim> run_norm(json& params, json& quantities) {
    int dim = detail::resolved(params, "d", 1);
    double p = detail::resolved(params, "p", 1.0);
    std::string which = params.at("which");
    QuadratureSpec spec = detail::spec_from_params(params, dim);
    std::vector<Claim> claims;
    NormReport rep;
    if (which == "lp" || which == "w1p") {
        TestFunction phi = parse_field(params.at("phi"), dim);
        Weight w = parse_weight(params.at("weight"), dim);
        rep = which == "lp" ? lp_norm(phi, w, p, spec) : w1p_norm(phi, w, p, spec);
    } else if (which == "seminorm" || which == "wcal") {
        TestFunction phi = parse_field(params.at("phi"), dim);
        WeightPair pair = detail::pair_from_params(params, dim);
        double theta = params.at("theta");
        rep = which == "seminorm" ? grad_seminorm(phi, pair, theta, p, spec)
                                  : wcal_norm(phi, pair, theta, p, spec);
    } else if (which == "mtq") {
        WeightPair pair = detail::pair_from_params(params, dim);
        rep = m_theta_q(pair, params.at("theta"), params.at("q"), spec);
    } else {
        throw std::invalid_argument("norm scenario: unknown 'which': " + which);
    }
    quantities["norm"] = detail::quantity_json(rep.value, rep.status, rep.trace);
    for (auto& [name, v] : rep.components)
        quantities["component_" + name] = detail::quantity_json(v, rep.status);
    claims.push_back({"norm_finite", rep.status == Status::converged,
                      std::string("status=") + to_string(rep.status)});
    return claims;
}

inline std::vector<Claim> run_verify_main(json& params, json& quantities) {
    int dim = detail::resolved(params, "d", 1);
    TestFunction phi = parse_field(params.at("phi"), dim);
    WeightPair pair = detail::pair_from_params(params, dim);
    double theta = params.at("theta");
    double p = params.at("p");
    QuadratureSpec spec = detail::spec_from_params(params, dim);
    SandwichReport rep = sandwich_check(phi, pair, theta, p, spec);
    Status st = rep.inconclusive ? Status::inconclusive : Status::converged;
    quantities["lower"] = detail::quantity_json(rep.lower, st);
    quantities["family_upper"] = detail::quantity_json(rep.family_upper, st);
    quantities["argmin_beta"] = detail::quantity_json(rep.argmin_beta, st);
    quantities["cp"] = detail::quantity_json(rep.cp, Status::converged);
    quantities["wcal"] = detail::quantity_json(rep.wcal, st);
    std::vector<Claim> claims;
    claims.push_back({"verdict_left", rep.verdict_left, "lower<=family_upper"});
    claims.push_back({"verdict_right", rep.verdict_right, "family_upper<=cp*wcal"});
    claims.push_back({"all_converged", !rep.inconclusive, ""});
    return claims;
}

inline std::vector<Claim> run_steinweiss_discrete(json& params, json& quantities,
                                                  std::uint64_t seed) {
    int n = params.at("n");
    double p = params.at("p");
    int count = detail::resolved(params, "count", 100);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> wdist(0.2, 5.0);
    std::uniform_real_distribution<double> vdist(-1.0, 1.0);
    std::uniform_real_distribution<double> tdist(0.1, 0.9);
    double worst = 0;
    for (int k = 0; k < count; ++k) {
        std::vector<double> w0(static_cast<size_t>(n), 0.0), w1(static_cast<size_t>(n), 0.0);
        for (auto& v : w0) v = wdist(rng);
        for (auto& v : w1) v = wdist(rng);
        std::vector<std::complex<double>> phi(static_cast<size_t>(n));
        for (auto& v : phi) v = {vdist(rng), vdist(rng)};
        DiscreteCouple c(w0, w1, p, p);
        SwEquality eq = sw_equality_check(c, tdist(rng), phi);
        if (eq.target > 0) worst = std::max(worst, std::abs(eq.achieved - eq.target) / eq.target);
    }
    quantities["max_rel_deviation"] = detail::quantity_json(worst, Status::converged);
    std::vector<Claim> claims;
    claims.push_back({"isometry_within_1e-10", worst <= 1e-10, "max_rel_dev=" + std::to_string(worst)});
    return claims;
}

inline std::vector<Claim> run_opnorm_interp(json& params, json& quantities,
                                            std::uint64_t seed) {
    int n = detail::resolved(params, "n", 6);
    int count = detail::resolved(params, "count", 1000);
    std::vector<double> thetas{0.25, 0.5, 0.75};
    if (params.contains("thetas")) thetas = params["thetas"].get<std::vector<double>>();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mdist(-1.0, 1.0);
    std::uniform_real_distribution<double> wdist(0.2, 5.0);
    int failures = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < count; ++k) {
        Matrix T(n);
        for (double& v : T.a) v = mdist(rng);
        std::vector<double> w0(static_cast<size_t>(n), 0.0), w1(static_cast<size_t>(n), 0.0);
        for (auto& v : w0) v = wdist(rng);
        for (auto& v : w1) v = wdist(rng);
        DiscreteCouple c(w0, w1, 1.0, 1.0);
        for (double theta : thetas) {
            auto chk = opnorm_interpolation_check(T, c, theta);
            if (!chk.holds) ++failures;
            worst_margin = std::min(worst_margin, chk.rhs - chk.lhs);
        }
    }
    quantities["failures"] = detail::quantity_json(failures, Status::converged);
    quantities["min_margin"] = detail::quantity_json(worst_margin, Status::converged);
    std::vector<Claim> claims;
    claims.push_back({"all_instances_pass", failures == 0,
                      "failures=" + std::to_string(failures)});
    return claims;
}

inline std::vector<Claim> run_semigroup(json& params, json& quantities) {
    int n = detail::resolved(params, "n", 32);
    double theta = detail::resolved(params, "theta", 0.5);
    double t0 = detail::resolved(params, "t0", 0.5);
    std::vector<double> times{1.0, 2.0, 4.0, 8.0};
    if (params.contains("times")) times = params["times"].get<std::vector<double>>();
    params["times"] = times;
    Matrix L = laplacian_1d(n);
    std::vector<double> w0(size_t(n), 1.0), w1(size_t(n), 1.0), g(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) w1[size_t(i)] = std::exp(-std::abs(i - n / 2) / 8.0);
    for (int i = 0; i < n; ++i) {
        double u = (i - n / 2) / 4.0;
        g[size_t(i)] = std::exp(-u * u);
    }
    SemigroupReport rep = semigroup_decay_study(L, w0, w1, theta, t0, times, g);
    json curve = json::array();
    for (const auto& row : rep.rows) curve.push_back({row.t, row.measured, row.bound});
    quantities["decay_curve"] = {{"value", rep.rows.empty() ? 0.0 : rep.rows.back().measured},
                                 {"status", "converged"},
                                 {"rows", curve}};
    std::vector<Claim> claims;
    claims.push_back({"interpolated_decay_bound_holds", rep.all_pass, ""});
    return claims;
}

inline std::vector<Claim> run_counterexample(json& params, json& quantities) {
    StudyReport rep = counterexample_study(params.at("alpha"), params.at("beta"),
                                           params.at("d"), detail::resolved(params, "p", 1.0));
    for (auto& [name, q] : rep.quantities)
        quantities[name] = detail::quantity_json(q.value, q.status, q.trace);
    return rep.claims;
}

inline std::vector<Claim> run_appendix_osc(json& params, json& quantities) {
    AppendixOscOptions opt;
    if (params.contains("equivalence_samples")) opt.equivalence_samples = params["equivalence_samples"];
    if (params.contains("lipschitz_pairs")) opt.lipschitz_pairs = params["lipschitz_pairs"];
    if (params.contains("points_per_axis")) opt.points_per_axis = params["points_per_axis"];
    StudyReport rep = appendix_osc_study(detail::resolved(params, "p", 1.0),
                                         detail::resolved(params, "theta", 0.75), opt);
    for (auto& [name, q] : rep.quantities)
        quantities[name] = detail::quantity_json(q.value, q.status, q.trace);
    return rep.claims;
}

inline std::vector<Claim> run_homog1d(json& params, json& quantities) {
    int dim = 1;
    TestFunction g = parse_field(params.at("g"), dim);
    Weight omega = parse_weight(params.at("omega"), dim);
    double p = detail::resolved(params, "p", 1.0);
    double grid_step = detail::resolved(params, "grid_step", 1e-3);
    double tol = detail::resolved(params, "residual_tol", 1e-6);
    Homog1dReport rep = homog1d_check(g, omega, p, grid_step);
    quantities["norm_g"] = detail::quantity_json(rep.norm_g, Status::converged);
    quantities["norm_G_prime"] = detail::quantity_json(rep.norm_G_prime, Status::converged);
    quantities["residual"] = detail::quantity_json(rep.residual, Status::converged);
    std::vector<Claim> claims;
    claims.push_back({"isometry_within_tol", rep.residual <= tol,
                      "residual=" + std::to_string(rep.residual)});
    return claims;
}

inline std::vector<Claim> run_approx_sweep(json& params, json& quantities) {
    int dim = detail::resolved(params, "d", 1);
    double p = detail::resolved(params, "p", 1.0);
    std::string mode = params.at("mode");
    TestFunction phi = parse_field(params.at("phi"), dim);
    Weight nu = parse_weight(detail::resolved<std::string>(params, "nu", "one"), dim);
    QuadratureSpec spec = detail::spec_from_params(params, dim);
    std::vector<Claim> claims;

    if (mode == "cutoff") {
        std::vector<int> ns{4, 8, 16, 32};
        if (params.contains("ns")) ns = params["ns"].get<std::vector<int>>();
        params["ns"] = ns;
        std::vector<double> errs;
        for (int n : ns) {
            TestFunction xi = cutoff_xi(n, dim);
            ScalarField complement;
            complement.dim = dim;
            complement.label = "1-" + xi.field.label;
            ScalarField xif = xi.field;
            complement.value = [xif](const Vec& x) { return 1.0 - xif(x); };
            complement.grad = [xif, dim](const Vec& x) {
                Vec g = xif.gradient(x);
                return -1.0 * g;
            };
            complement.radial_kinks = xif.radial_kinks;
            TestFunction diff = multiply(phi, complement);
            errs.push_back(w1p_norm(diff, nu, p, spec).value);
            quantities["w1p_err_n" + std::to_string(n)] =
                detail::quantity_json(errs.back(), Status::converged);
        }
        bool mono = true;
        for (size_t i = 1; i < errs.size(); ++i) mono = mono && errs[i] <= errs[i - 1] * (1 + 1e-12);
        double ratio_req = detail::resolved(params, "final_ratio", 1e-3);
        bool vanish = errs.front() > 0 && errs.back() <= ratio_req * errs.front();
        claims.push_back({"cutoff_error_non_increasing", mono, ""});
        claims.push_back({"cutoff_error_vanishes", vanish,
                          "first=" + std::to_string(errs.front()) +
                              " last=" + std::to_string(errs.back())});
        return claims;
    }
    if (mode == "mollify") {
        std::vector<int> ns{4, 8, 16, 32};
        if (params.contains("ns")) ns = params["ns"].get<std::vector<int>>();
        params["ns"] = ns;
        std::vector<double> errs;
        for (int n : ns) {
            // step refines faster than 1/n so that the lattice resolves the
            // shrinking kernel better and better; with a fixed
            // points-per-kernel count the convolution error would plateau
            double step = 1.0 / (4.0 * n * std::sqrt(double(n)));
            TestFunction smooth = mollify(phi, n, step);
            auto integrand = [&phi, &smooth](const Vec& x) {
                return std::abs(phi(x) - smooth(x));
            };
            IntegralResult ir = integrate(dim, integrand, spec, smooth.field.support,
                                          phi.field.radial_kinks);
            errs.push_back(ir.value);
            quantities["l1_err_n" + std::to_string(n)] =
                detail::quantity_json(ir.value, ir.status);
        }
        bool halves = true;
        for (size_t i = 1; i < errs.size(); ++i) halves = halves && errs[i] <= 0.5 * errs[i - 1];
        claims.push_back({"mollify_error_halves", halves, ""});
        return claims;
    }
    throw std::invalid_argument("approx-sweep: unknown mode '" + mode + "'");
}

}  // namespace runners

// ---------------------------------------------------------------------------
// Scenario driver
// ---------------------------------------------------------------------------

inline ScenarioResult run_scenario(const json& sc, std::uint64_t global_seed) {
    ScenarioResult out;
    out.id = sc.at("id");
    out.kind = sc.at("kind");
    json params = sc.value("params", json::object());
    std::uint64_t seed = global_seed ^ fnv1a64(out.id) ^ std::uint64_t(sc.value("seed", 0));

    json quantities = json::object();
    std::vector<Claim> claims;
    const std::string& kind = out.kind;
    if (kind == "cp")
        claims = runners::run_cp(params, quantities);
    else if (kind == "norm")
        claims = runners::run_norm(params, quantities);
    else if (kind == "verify-main")
        claims = runners::run_verify_main(params, quantities);
    else if (kind == "steinweiss-discrete")
        claims = runners::run_steinweiss_discrete(params, quantities, seed);
    else if (kind == "opnorm-interp")
        claims = runners::run_opnorm_interp(params, quantities, seed);
    else if (kind == "semigroup")
        claims = runners::run_semigroup(params, quantities);
    else if (kind == "counterexample")
        claims = runners::run_counterexample(params, quantities);
    else if (kind == "appendix-osc")
        claims = runners::run_appendix_osc(params, quantities);
    else if (kind == "homog1d")
        claims = runners::run_homog1d(params, quantities);
    else if (kind == "approx-sweep")
        claims = runners::run_approx_sweep(params, quantities);
    else
        throw std::invalid_argument("unknown scenario kind: " + kind);

    // Expectations: claims default to true; 'expect' may flip individual
    // claims or pin quantity statuses.
    json expect = sc.value("expect", json::object());
    json expected_claims = expect.value("claims", json::object());
    for (const auto& c : claims) {
        bool want = expected_claims.value(c.name, true);
        if (c.pass != want) {
            out.ok = false;
            out.fail_reason = "claim '" + c.name + "' = " + (c.pass ? "true" : "false") +
                              ", expected " + (want ? "true" : "false");
            break;
        }
    }
    if (out.ok && expect.contains("statuses")) {
        for (auto& [qname, wanted] : expect["statuses"].items()) {
            if (!quantities.contains(qname)) {
                out.ok = false;
                out.fail_reason = "expected status for unknown quantity '" + qname + "'";
                break;
            }
            std::string got = quantities[qname]["status"];
            if (got != wanted.get<std::string>()) {
                out.ok = false;
                out.fail_reason =
                    "quantity '" + qname + "' status " + got + ", expected " + wanted.get<std::string>();
                break;
            }
        }
    }

    out.report["id"] = out.id;
    out.report["kind"] = out.kind;
    out.report["version"] = kVersion;
    out.report["params"] = params;
    out.report["seed"] = seed;
    out.report["quantities"] = quantities;
    detail::add_claims(out.report, claims);
    out.report["ok"] = out.ok;
    return out;
}

struct RunOutcome {
    int exit_code = 0;          // 0 ok, 1 verdict failure, 2 parse error, 3 evaluation error
    std::string message;
    std::vector<ScenarioResult> results;
};

/// Executes every scenario in a config, writes one JSON report per scenario
/// plus a summary CSV. Scenario evaluation may run in parallel; reports are
/// written serially in config order so outputs are byte-stable.
inline RunOutcome run_config(const json& config, const std::filesystem::path& outdir,
                             int jobs = 1, std::uint64_t seed_override = 0,
                             bool have_seed_override = false) {
    RunOutcome out;
    if (!config.contains("scenarios") || !config["scenarios"].is_array()) {
        out.exit_code = 2;
        out.message = "config: missing 'scenarios' array";
        return out;
    }
    std::uint64_t seed = have_seed_override ? seed_override
                                            : std::uint64_t(config.value("seed", 0));
    const json& scenarios = config["scenarios"];

    {  // id uniqueness and minimal shape, before any work starts
        static const std::vector<std::string> kinds{
            "cp",          "norm",        "verify-main", "steinweiss-discrete", "opnorm-interp",
            "semigroup",   "counterexample", "appendix-osc", "homog1d",         "approx-sweep"};
        std::map<std::string, int> seen;
        for (const auto& sc : scenarios) {
            if (!sc.contains("id") || !sc.contains("kind")) {
                out.exit_code = 2;
                out.message = "config: every scenario needs 'id' and 'kind'";
                return out;
            }
            if (std::find(kinds.begin(), kinds.end(), sc["kind"].get<std::string>()) == kinds.end()) {
                out.exit_code = 2;
                out.message = "config: unknown kind '" + sc["kind"].get<std::string>() +
                              "' in scenario '" + sc["id"].get<std::string>() + "'";
                return out;
            }
            if (++seen[sc["id"]] > 1) {
                out.exit_code = 2;
                out.message = "config: duplicate scenario id '" + sc["id"].get<std::string>() + "'";
                return out;
            }
        }
    }

    std::filesystem::create_directories(outdir);
    std::vector<ScenarioResult> results(scenarios.size());
    std::vector<std::string> errors(scenarios.size());

    auto work = [&](size_t i) {
        try {
            results[i] = run_scenario(scenarios[size_t(i)], seed);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };
    if (jobs <= 1) {
        for (size_t i = 0; i < scenarios.size(); ++i) work(i);
    } else {
        std::vector<std::future<void>> futs;
        size_t next = 0;
        while (next < scenarios.size() || !futs.empty()) {
            while (int(futs.size()) < jobs && next < scenarios.size())
                futs.push_back(std::async(std::launch::async, work, next++));
            futs.front().get();
            futs.erase(futs.begin());
        }
    }

    for (size_t i = 0; i < scenarios.size(); ++i) {
        if (!errors[i].empty()) {
            out.exit_code = 3;
            out.message = "scenario '" + scenarios[i]["id"].get<std::string>() +
                          "' failed to evaluate: " + errors[i];
            return out;
        }
    }

    std::ostringstream csv;
    csv << "id,kind,quantities,ok\n";
    for (size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        std::ofstream jf(outdir / (r.id + ".report.json"));
        jf << r.report.dump(2) << "\n";
        std::ostringstream qs;
        bool first = true;
        for (auto& [name, q] : r.report["quantities"].items()) {
            if (!q.contains("value")) continue;
            if (!first) qs << ";";
            first = false;
            qs << name << "=" << std::setprecision(17) << q["value"].get<double>();
        }
        csv << r.id << "," << r.kind << "," << qs.str() << "," << (r.ok ? "true" : "false") << "\n";
        if (!r.ok && out.exit_code == 0) {
            out.exit_code = 1;
            out.message = "scenario '" + r.id + "': " + r.fail_reason;
        }
        out.results.push_back(r);
    }
    std::ofstream cf(outdir / "summary.csv");
    cf << csv.str();
    return out;
}

inline RunOutcome run_config_file(const std::filesystem::path& path,
                                  const std::filesystem::path& outdir, int jobs = 1,
                                  std::uint64_t seed_override = 0, bool have_seed = false) {
    std::ifstream in(path);
    if (!in) {
        RunOutcome out;
        out.exit_code = 2;
        out.message = "cannot open config: " + path.string();
        return out;
    }
    json config;
    try {
        in >> config;
    } catch (const std::exception& e) {
        RunOutcome out;
        out.exit_code = 2;
        out.message = std::string("config parse error: ") + e.what();
        return out;
    }
    return run_config(config, outdir, jobs, seed_override, have_seed);
}

}  // namespace sobolab
