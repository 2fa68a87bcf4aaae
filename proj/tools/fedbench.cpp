// Benchmark harness for the multi-resource allocation solver: runs the
// proposed alternating method and the three random baselines on seeded
// scenarios, emits CSV traces, and cross-checks the closed-form solvers
// against brute-force grids.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fedalloc/bench.hpp"
#include "fedalloc/fixtures.hpp"
#include "fedalloc/oracle.hpp"

namespace {

using namespace fedalloc;

int cmd_run(const std::string& config_path, const std::string& out_dir, int seeds,
            const std::string& methods_csv, bool no_sweep, int jobs) {
    ScenarioConfig cfg = load_config(config_path);
    SuiteOptions opts;
    opts.out_dir = out_dir;
    opts.n_seeds = seeds;
    opts.run_sweep = !no_sweep;
    opts.jobs = jobs;
    if (!methods_csv.empty()) {
        opts.methods.clear();
        std::string item;
        std::stringstream ss(methods_csv);
        while (std::getline(ss, item, ',')) opts.methods.push_back(item);
    }
    SuiteResult result = run_suite(cfg, opts);
    std::cout << "wrote " << out_dir << "/convergence.csv, comparison.csv";
    if (!result.sweep.empty()) std::cout << ", energy_sweep.csv";
    std::cout << "\n";
    double wall = 0.0;
    for (const auto& rec : result.records) wall += rec.wall_time_s;
    std::printf("total solver time: %.2f s\n", wall);
    return report(result.records, std::cout);
}

bool check(const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name, detail.empty() ? "" : " - ",
                detail.c_str());
    return ok;
}

// Closed-form minimizers vs dense Lagrangian grids, then harmony search vs a
// dense accuracy scan; mirrors the checks the test suite runs.
int cmd_oracle_check(int pf_fixtures, int theta_fixtures) {
    bool all_ok = true;
    AccuracyConfig acc;

    {
        AxisSpec p_axis{kPfGridPLo, kPfGridPHi, 200};
        AxisSpec f_axis{kPfGridFLo, kPfGridFHi, 200};
        RandomStream rng(20240901);
        int bad = 0;
        double worst_rel = 0.0;
        for (int i = 0; i < pf_fixtures; ++i) {
            PfFixture fx = sample_pf_fixture(rng);
            double f_star = solve_f(fx.dev, fx.duals, fx.theta, acc);
            double p_star = solve_p(fx.dev, fx.duals, fx.theta, acc);
            PfGridResult grid = grid_search_pf(fx.dev, fx.duals, fx.theta, acc, p_axis, f_axis);
            double solver_value =
                lagrangian_value(fx.dev, 1, p_star, f_star, 0.0, fx.duals, fx.theta, acc);
            double rel = std::abs(grid.value - solver_value) /
                         std::max(1.0, std::abs(solver_value));
            worst_rel = std::max(worst_rel, rel);
            bool ok = std::abs(grid.p - p_star) <= p_axis.spacing() &&
                      std::abs(grid.f - f_star) <= f_axis.spacing() && rel <= 1e-3;
            if (!ok) ++bad;
        }
        char detail[128];
        std::snprintf(detail, sizeof(detail), "%d fixtures, %d off-grid, worst value gap %.2e",
                      pf_fixtures, bad, worst_rel);
        all_ok = check("power/frequency minimizers vs 200x200 grid", bad == 0, detail) && all_ok;
    }

    {
        RandomStream rng(20240902);
        HarmonyParams hp;
        int bad = 0;
        double worst_gap = 0.0;
        for (int i = 0; i < theta_fixtures; ++i) {
            auto devices = sample_scenario(rng, 3, i % 2 == 0);
            std::vector<double> p, f;
            for (const auto& dev : devices) {
                p.push_back(rng.uniform(0.3, 3.0));
                f.push_back(rng.uniform(0.5, dev.f_max));
            }
            auto objective = [&](double th) {
                return penalized_objective(th, devices, p, f, hp, acc);
            };
            RandomStream search(derive_seed(777, static_cast<std::uint64_t>(i),
                                            StreamTag::harmony));
            HarmonyResult hs = harmony_search(objective, acc.theta_lo, acc.theta_hi, hp, search);
            ThetaGridResult grid = grid_search_theta(devices, p, f,
                                                     AxisSpec{acc.theta_lo, acc.theta_hi, 10000},
                                                     hp, acc);
            double gap = std::abs(hs.value - grid.value) / std::max(1.0, std::abs(grid.value));
            worst_gap = std::max(worst_gap, gap);
            if (gap > 1e-3) ++bad;
        }
        char detail[128];
        std::snprintf(detail, sizeof(detail), "%d fixtures, %d beyond 1e-3, worst gap %.2e",
                      theta_fixtures, bad, worst_gap);
        all_ok = check("harmony search vs 10k-point accuracy scan", bad == 0, detail) && all_ok;
    }

    return all_ok ? 0 : 1;
}

int cmd_report(const std::string& in_dir) {
    auto records = read_comparison_csv(in_dir + "/comparison.csv");
    return report(records, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-resource allocation benchmark for on-device federated learning"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string methods;
    std::string in_dir = "out";
    int seeds = 5;
    int jobs = 0;
    bool no_sweep = false;
    int pf_fixtures = 100;
    int theta_fixtures = 20;

    auto* run = app.add_subcommand("run", "run the benchmark suite and write CSV outputs");
    run->add_option("--config", config_path, "scenario config file (flat JSON)")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seeds", seeds, "number of seeded scenarios");
    run->add_option("--methods", methods,
                    "comma-separated subset of proposed,random_pf,random_theta,random_all");
    run->add_flag("--no-sweep", no_sweep, "skip the dataset-size energy sweep");
    run->add_option("--jobs", jobs, "parallel scenario runs (0 = hardware)");

    auto* oracle = app.add_subcommand("oracle-check",
                                      "verify the closed-form solvers against grid oracles");
    oracle->add_option("--pf-fixtures", pf_fixtures, "power/frequency fixture count");
    oracle->add_option("--theta-fixtures", theta_fixtures, "accuracy-search fixture count");

    auto* rep = app.add_subcommand("report", "summarize a previously written comparison.csv");
    rep->add_option("--in", in_dir, "directory holding comparison.csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, seeds, methods, no_sweep, jobs);
        if (oracle->parsed()) return cmd_oracle_check(pf_fixtures, theta_fixtures);
        if (rep->parsed()) return cmd_report(in_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
