// Scenario runner CLI: executes config files of named scenarios and emits
// one JSON report per scenario plus a summary CSV. Single-scenario
// subcommands are thin aliases that build a one-element config.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sobolab/scenario.hpp"
#include "sobolab/version.hpp"

using sobolab::json;

namespace {

struct CommonOpts {
    std::string out = "out";
    int jobs = 1;
    std::uint64_t seed = 0;
    bool have_seed = false;
};

int run_single(const std::string& id, const std::string& kind, const json& params,
               const CommonOpts& common) {
    json config;
    config["scenarios"] = json::array({json{{"id", id}, {"kind", kind}, {"params", params}}});
    auto outcome = sobolab::run_config(config, common.out, common.jobs, common.seed,
                                       common.have_seed);
    if (!outcome.message.empty()) std::cerr << outcome.message << "\n";
    for (const auto& r : outcome.results)
        std::cout << r.id << ": " << (r.ok ? "ok" : "FAILED") << "\n";
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted Sobolev interpolation laboratory"};
    app.set_version_flag("--version", sobolab::kVersion);
    app.require_subcommand(1);

    CommonOpts common;
    auto add_common = [&common](CLI::App* cmd) {
        cmd->add_option("--out", common.out, "output directory for reports");
        cmd->add_option("--jobs", common.jobs, "parallel scenario evaluations");
        cmd->add_option("--seed", common.seed, "seed override")->each([&common](const std::string&) {
            common.have_seed = true;
        });
    };

    // lab run <config.json>
    std::string config_path;
    auto* run = app.add_subcommand("run", "run every scenario in a config file");
    run->add_option("config", config_path, "scenario config (JSON)")->required();
    add_common(run);

    // single-scenario aliases
    double p = 1.0, theta = 0.5, alpha = 1.0, beta = 2.0, grid_step = 1e-3, t0 = 0.5;
    int d = 1, n = 8, count = 100;
    std::string phi = "bump:radius=1,height=1";
    std::string w0 = "one", w1 = "gauss:a=1", omega = "one", mode = "cutoff";
    std::vector<double> times{1, 2, 4, 8};

    auto* cp = app.add_subcommand("cp", "interpolation constant for a given exponent");
    cp->add_option("--p", p)->required();
    add_common(cp);

    auto* vm = app.add_subcommand("verify-main", "norm sandwich for one scenario");
    vm->add_option("--phi", phi);
    vm->add_option("--w0", w0);
    vm->add_option("--w1", w1);
    vm->add_option("--theta", theta);
    vm->add_option("--p", p);
    vm->add_option("--d", d);
    add_common(vm);

    auto* sw = app.add_subcommand("steinweiss-discrete", "random isometry checks");
    sw->add_option("--n", n);
    sw->add_option("--p", p);
    sw->add_option("--count", count);
    add_common(sw);

    auto* op = app.add_subcommand("opnorm-interp", "weighted-l1 operator norm interpolation");
    op->add_option("--n", n);
    op->add_option("--count", count);
    add_common(op);

    auto* sg = app.add_subcommand("semigroup", "matrix semigroup decay study");
    sg->add_option("--n", n);
    sg->add_option("--theta", theta);
    sg->add_option("--t0", t0);
    sg->add_option("--times", times);
    add_common(sg);

    auto* ce = app.add_subcommand("counterexample", "oscillatory weight classification");
    ce->add_option("--alpha", alpha)->required();
    ce->add_option("--beta", beta)->required();
    ce->add_option("--d", d);
    ce->add_option("--p", p);
    add_common(ce);

    auto* ao = app.add_subcommand("appendix-osc", "oscillatory pair study");
    ao->add_option("--p", p);
    ao->add_option("--theta", theta);
    add_common(ao);

    auto* hg = app.add_subcommand("homog1d", "antiderivative isometry check");
    hg->add_option("--g", phi);
    hg->add_option("--omega", omega);
    hg->add_option("--p", p);
    hg->add_option("--grid-step", grid_step);
    add_common(hg);

    auto* as = app.add_subcommand("approx-sweep", "cutoff / mollifier convergence sweep");
    as->add_option("--mode", mode);
    as->add_option("--phi", phi);
    as->add_option("--nu", omega);
    as->add_option("--p", p);
    as->add_option("--d", d);
    add_common(as);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto outcome = sobolab::run_config_file(config_path, common.out, common.jobs,
                                                    common.seed, common.have_seed);
            if (!outcome.message.empty()) std::cerr << outcome.message << "\n";
            for (const auto& r : outcome.results)
                std::cout << r.id << ": " << (r.ok ? "ok" : "FAILED") << "\n";
            return outcome.exit_code;
        }
        if (cp->parsed()) return run_single("cp", "cp", json{{"p", p}}, common);
        if (vm->parsed())
            return run_single("verify-main", "verify-main",
                              json{{"phi", phi},
                                   {"pair", json::array({w0, w1})},
                                   {"theta", theta},
                                   {"p", p},
                                   {"d", d}},
                              common);
        if (sw->parsed())
            return run_single("steinweiss-discrete", "steinweiss-discrete",
                              json{{"n", n}, {"p", p}, {"count", count}}, common);
        if (op->parsed())
            return run_single("opnorm-interp", "opnorm-interp", json{{"n", n}, {"count", count}},
                              common);
        if (sg->parsed())
            return run_single("semigroup", "semigroup",
                              json{{"n", n}, {"theta", theta}, {"t0", t0}, {"times", times}},
                              common);
        if (ce->parsed())
            return run_single("counterexample", "counterexample",
                              json{{"alpha", alpha}, {"beta", beta}, {"d", d}, {"p", p}}, common);
        if (ao->parsed())
            return run_single("appendix-osc", "appendix-osc", json{{"p", p}, {"theta", theta}},
                              common);
        if (hg->parsed())
            return run_single("homog1d", "homog1d",
                              json{{"g", phi}, {"omega", omega}, {"p", p}, {"grid_step", grid_step}},
                              common);
        if (as->parsed())
            return run_single("approx-sweep", "approx-sweep",
                              json{{"mode", mode}, {"phi", phi}, {"nu", omega}, {"p", p}, {"d", d}},
                              common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
