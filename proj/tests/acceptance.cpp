// Acceptance suite: end-to-end checks of the solver stack against
// independent brute-force references and the qualitative benchmark claims.
// Each criterion prints one PASS/FAIL line; the exit code is the number of
// failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fedalloc/bench.hpp"
#include "fedalloc/cubic.hpp"
#include "fedalloc/fixtures.hpp"
#include "fedalloc/oracle.hpp"

using namespace fedalloc;

namespace {

const AccuracyConfig kAcc;

struct Criterion {
    const char* name;
    std::function<bool(std::string&)> run;
    double budget_s;
};

bool c1_inner_oracle(std::string& detail) {
    RandomStream rng(910);
    AxisSpec p_axis{kPfGridPLo, kPfGridPHi, 200};
    AxisSpec f_axis{kPfGridFLo, kPfGridFHi, 200};
    int bad = 0;
    double worst_rel = 0.0;
    for (int i = 0; i < 100; ++i) {
        PfFixture fx = sample_pf_fixture(rng);
        double f_star = solve_f(fx.dev, fx.duals, fx.theta, kAcc);
        double p_star = solve_p(fx.dev, fx.duals, fx.theta, kAcc);
        PfGridResult grid = grid_search_pf(fx.dev, fx.duals, fx.theta, kAcc, p_axis, f_axis);
        double solver_value =
            lagrangian_value(fx.dev, 1, p_star, f_star, 0.0, fx.duals, fx.theta, kAcc);
        double rel = std::abs(grid.value - solver_value) / std::max(1.0, std::abs(solver_value));
        worst_rel = std::max(worst_rel, rel);
        bool ok = std::abs(grid.p - p_star) <= p_axis.spacing() &&
                  std::abs(grid.f - f_star) <= f_axis.spacing() && rel <= 1e-3;
        if (!ok) ++bad;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "100 fixtures vs 200x200 grid, %d mismatches, worst value gap %.2e",
                  bad, worst_rel);
    detail = buf;
    return bad == 0;
}

bool c2_theta_oracle(std::string& detail) {
    RandomStream rng(911);
    HarmonyParams hp;
    int bad = 0;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        std::vector<DeviceProfile> devices = sample_scenario(rng, 3, i % 2 == 0);
        std::vector<double> p, f;
        for (const auto& dev : devices) {
            p.push_back(rng.uniform(0.3, 3.0));
            f.push_back(rng.uniform(0.5, dev.f_max));
        }
        auto objective = [&](double th) {
            return penalized_objective(th, devices, p, f, hp, kAcc);
        };
        RandomStream search(derive_seed(911, static_cast<std::uint64_t>(i), StreamTag::harmony));
        HarmonyResult hs = harmony_search(objective, kAcc.theta_lo, kAcc.theta_hi, hp, search);
        ThetaGridResult grid = grid_search_theta(
            devices, p, f, AxisSpec{kAcc.theta_lo, kAcc.theta_hi, 10000}, hp, kAcc);
        double gap = std::abs(hs.value - grid.value) / std::max(1.0, std::abs(grid.value));
        worst = std::max(worst, gap);
        if (gap > 1e-3) ++bad;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "20 fixtures vs 10k-point scan, %d beyond 1e-3, worst gap %.2e",
                  bad, worst);
    detail = buf;
    return bad == 0;
}

bool c3_full_oracle(std::string& detail) {
    RandomStream rng(912);
    OptimizerConfig cfg;
    int bad = 0;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        std::vector<DeviceProfile> devices{sample_device(rng, i % 2 == 0)};
        RandomStream search(derive_seed(912, static_cast<std::uint64_t>(i), StreamTag::harmony));
        OptimizationResult res = optimize(devices, cfg, search);
        GridSpec spec{{0.02, 8.0, 180}, {0.01, 2.0, 180}, {1e-4, 0.999, 180}};
        FullGridResult oracle = grid_search_full(devices, spec, kAcc);
        double gap = std::abs(res.objective - oracle.value) / oracle.value;
        worst = std::max(worst, gap);
        if (gap > 0.02) ++bad;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "20 single-device fixtures, %d beyond 2%%, worst gap %.3f%%",
                  bad, 100.0 * worst);
    detail = buf;
    return bad == 0;
}

bool c4_convergence_shape(std::string& detail) {
    ScenarioConfig cfg = parse_config("{\"seed\": 0}");
    OptimizerConfig ocfg = cfg.optimizer_config();
    int flat = 0;
    for (int r = 0; r < 20; ++r) {
        std::uint64_t rs = cfg.seed + static_cast<std::uint64_t>(r);
        std::vector<DeviceProfile> devices = generate_scenario(cfg, rs);
        RandomStream search = RandomStream::derive(rs, 0, StreamTag::harmony);
        OptimizationResult res = optimize(devices, ocfg, search);
        for (std::size_t k = 1; k < res.trace.size() && k <= 9; ++k) {
            double rel = std::abs(res.trace[k] - res.trace[k - 1]) /
                         std::max(1e-300, std::abs(res.trace[k - 1]));
            if (rel < 1e-3) {
                ++flat;
                break;
            }
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "incumbent trace settled below 1e-3 within 10 outer rounds on %d/20 seeds (need 18)",
                  flat);
    detail = buf;
    return flat >= 18;
}

bool c5_baseline_ordering(std::string& detail) {
    ScenarioConfig cfg = parse_config("{\"seed\": 0}");
    OptimizerConfig ocfg = cfg.optimizer_config();
    const int seeds = 50;
    int wins = 0;
    double excess_pf = 0.0, excess_theta = 0.0;
    for (int r = 0; r < seeds; ++r) {
        std::uint64_t rs = cfg.seed + static_cast<std::uint64_t>(r);
        std::vector<DeviceProfile> devices = generate_scenario(cfg, rs);
        RandomStream sp = RandomStream::derive(rs, 0, StreamTag::harmony);
        RandomStream s1 = RandomStream::derive(rs, 0, StreamTag::baseline_pf);
        RandomStream s2 = RandomStream::derive(rs, 0, StreamTag::baseline_theta);
        RandomStream s3 = RandomStream::derive(rs, 0, StreamTag::baseline_all);
        double prop = optimize(devices, ocfg, sp).objective;
        double pf = baseline_random_pf(devices, ocfg, s1).objective;
        double th = baseline_random_theta(devices, ocfg, s2).objective;
        double all = baseline_random_all(devices, ocfg, s3).objective;
        wins += prop <= pf && prop <= th && prop <= all;
        excess_pf += (pf - prop) / seeds;
        excess_theta += (th - prop) / seeds;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "wins %d/50 (need 45), mean excess: random-theta %.2f vs random-pf %.2f",
                  wins, excess_theta, excess_pf);
    detail = buf;
    return wins >= 45 && excess_theta > excess_pf;
}

double spearman(const std::vector<double>& xs) {
    // Rank correlation against the index order; xs has no ties in practice.
    std::vector<std::size_t> rank(xs.size());
    std::iota(rank.begin(), rank.end(), 0u);
    std::sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    double n = static_cast<double>(xs.size());
    double d2 = 0.0;
    for (std::size_t pos = 0; pos < rank.size(); ++pos) {
        double diff = static_cast<double>(pos) - static_cast<double>(rank[pos]);
        d2 += diff * diff;
    }
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

bool c6_energy_monotonicity(std::string& detail) {
    ScenarioConfig cfg = parse_config("{\"seed\": 0}");
    const int seeds = 20;
    int monotone = 0;
    std::vector<double> means(kSweepMultipliers.size(), 0.0);
    for (int r = 0; r < seeds; ++r) {
        std::uint64_t rs = cfg.seed + static_cast<std::uint64_t>(r);
        double prev = -1.0;
        bool nondecreasing = true;
        for (std::size_t mi = 0; mi < kSweepMultipliers.size(); ++mi) {
            ScenarioConfig scaled = cfg;
            scaled.dataset_scale = kSweepMultipliers[mi];
            std::vector<DeviceProfile> devices = generate_scenario(scaled, rs);
            RandomStream search = RandomStream::derive(rs, mi, StreamTag::sweep);
            OptimizationResult res = optimize(devices, scaled.optimizer_config(), search);
            double rc = round_count(res.allocation.theta, kAcc);
            double energy = 0.0;
            for (std::size_t i = 0; i < devices.size(); ++i) {
                DeviceCost c = total_cost(devices[i], res.allocation.p[i], res.allocation.f[i],
                                          res.allocation.theta, kAcc);
                energy += rc * (c.e_cmp + c.e_up);
            }
            means[mi] += energy / seeds;
            nondecreasing = nondecreasing && energy >= prev - 1e-9;
            prev = energy;
        }
        monotone += nondecreasing;
    }
    double rho = spearman(means);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "energy non-decreasing on %d/20 seeds (need 18), Spearman rho of means %.3f (need > 0.9)",
                  monotone, rho);
    detail = buf;
    return monotone >= 18 && rho > 0.9;
}

bool c7_invariants(std::string& detail) {
    std::ostringstream log;
    bool ok = true;

    {  // projected updates keep every multiplier family nonnegative
        RandomStream rng(913);
        DualState duals = DualState::zeros(5, 0.8);
        bool nonneg = true;
        for (int t = 0; t < 200; ++t) {
            Subgradients g;
            for (int i = 0; i < 5; ++i) {
                g.g_lam.push_back(rng.uniform(-2.0, 2.0));
                g.g_beta.push_back(rng.uniform(-2.0, 2.0));
                g.g_mu.push_back(rng.uniform(-2.0, 2.0));
                g.g_phi.push_back(rng.uniform(-2.0, 2.0));
            }
            duals = update_duals(duals, g);
            for (int i = 0; i < 5; ++i) {
                nonneg = nonneg && duals.lam[i] >= 0.0 && duals.beta[i] >= 0.0 &&
                         duals.mu[i] >= 0.0 && duals.phi[i] >= 0.0;
            }
        }
        ok = ok && nonneg;
        log << (nonneg ? "" : "multiplier-nonnegativity ");
    }

    {  // weak duality on every recorded dual iteration
        RandomStream rng(914);
        bool weak = true;
        for (int k = 0; k < 3; ++k) {
            std::vector<DeviceProfile> devices = sample_scenario(rng, 3, k == 0);
            BlockDiagnostics diag;
            BlockOptions opts;
            solve_block(devices, 0.15, DualState::zeros(3), opts, kAcc, &diag);
            for (std::size_t t = 0; t < diag.dual_values.size(); ++t) {
                weak = weak && diag.dual_values[t] <=
                                   diag.best_primal[t] + 1e-7 * (1.0 + std::abs(diag.best_primal[t]));
            }
        }
        ok = ok && weak;
        log << (weak ? "" : "weak-duality ");
    }

    {  // returned allocations satisfy every budget within 1e-6 (1 + budget)
        ScenarioConfig cfg = parse_config("{\"seed\": 5, \"n_devices\": 6}");
        bool feasible = true;
        for (int r = 0; r < 3; ++r) {
            std::uint64_t rs = cfg.seed + static_cast<std::uint64_t>(r);
            std::vector<DeviceProfile> devices = generate_scenario(cfg, rs);
            RandomStream search = RandomStream::derive(rs, 0, StreamTag::harmony);
            OptimizationResult res = optimize(devices, cfg.optimizer_config(), search);
            for (std::size_t i = 0; i < devices.size(); ++i) {
                FeasibilityResiduals resid = feasibility_residuals(
                    devices[i], res.allocation.p[i], res.allocation.f[i], res.allocation.theta);
                feasible = feasible && within_budgets(devices[i], resid, 1e-6);
            }
        }
        ok = ok && feasible;
        log << (feasible ? "" : "allocation-feasibility ");
    }

    {  // upload energy-latency product identity
        DeviceProfile dev;
        RandomStream rng(915);
        bool identity = true;
        double expected = dev.c_payload * dev.c_payload / (dev.sigma * dev.sigma);
        for (int i = 0; i < 1000; ++i) {
            double p = std::exp(rng.uniform(-8.0, 8.0));
            identity = identity &&
                       std::abs(e_up(dev, p) * t_up(dev, p) - expected) <= 1e-12 * expected;
        }
        ok = ok && identity;
        log << (identity ? "" : "upload-product ");
    }

    {  // RTT stays inside the delay support
        ChannelParams params;
        RandomStream rng(916);
        double rtt = 0.0;
        bool closed = true;
        for (int t = 0; t < 10000; ++t) {
            rtt = step_rtt(rtt, sample_delta_ip(rng, params));
            closed = closed && rtt >= 0.0 && rtt <= params.delta_ip_max;
        }
        ok = ok && closed;
        log << (closed ? "" : "rtt-closure ");
    }

    {  // harmony memory: best and worst never rise
        HarmonyParams hp;
        hp.t_max_improv = 1500;
        RandomStream rng(917);
        auto objective = [](double theta) { return std::cos(7.0 * theta) + 3.0 * theta; };
        HarmonyResult hs = harmony_search(objective, 0.05, 0.95, hp, rng);
        bool monotone = true;
        for (std::size_t t = 1; t < hs.trace.size(); ++t) {
            monotone = monotone && hs.trace[t] <= hs.trace[t - 1] &&
                       hs.worst_trace[t] <= hs.worst_trace[t - 1];
        }
        ok = ok && monotone;
        log << (monotone ? "" : "harmony-monotonicity ");
    }

    {  // one full suite run is bitwise deterministic
        ScenarioConfig cfg = parse_config(
            "{\"seed\": 6, \"n_devices\": 4, \"t_max_improv\": 400, \"dual_max_iter\": 500}");
        auto dir1 = std::filesystem::temp_directory_path() / "fedalloc_acc_det1";
        auto dir2 = std::filesystem::temp_directory_path() / "fedalloc_acc_det2";
        std::filesystem::remove_all(dir1);
        std::filesystem::remove_all(dir2);
        SuiteOptions opts;
        opts.n_seeds = 2;
        opts.out_dir = dir1.string();
        run_suite(cfg, opts);
        opts.out_dir = dir2.string();
        run_suite(cfg, opts);
        bool identical = true;
        for (const char* name : {"convergence.csv", "comparison.csv", "energy_sweep.csv"}) {
            std::ifstream a(dir1 / name), b(dir2 / name);
            std::ostringstream sa, sb;
            sa << a.rdbuf();
            sb << b.rdbuf();
            identical = identical && sa.str() == sb.str() && !sa.str().empty();
        }
        ok = ok && identical;
        log << (identical ? "" : "suite-determinism ");
    }

    detail = ok ? "multiplier signs, weak duality, budgets, upload product, RTT closure, "
                  "memory monotonicity, suite determinism"
                : "failed: " + log.str();
    return ok;
}

bool c8_stationarity(std::string& detail) {
    RandomStream rng(918);
    int bad_fd = 0;
    double worst_fd = 0.0;
    for (int i = 0; i < 1000; ++i) {
        PfFixture fx = sample_pf_fixture(rng);
        double f = solve_f(fx.dev, fx.duals, fx.theta, kAcc);
        double p = solve_p(fx.dev, fx.duals, fx.theta, kAcc);
        if (f >= fx.dev.f_max || p >= fx.dev.p_cap() || f <= kFreqFloorGhz) continue;
        double value = lagrangian_value(fx.dev, 1, p, f, 0.0, fx.duals, fx.theta, kAcc);
        double tol = 1e-5 * (1.0 + std::abs(value));
        double hf = 1e-5 * std::max(1.0, f);
        double df = (lagrangian_value(fx.dev, 1, p, f + hf, 0.0, fx.duals, fx.theta, kAcc) -
                     lagrangian_value(fx.dev, 1, p, f - hf, 0.0, fx.duals, fx.theta, kAcc)) /
                    (2.0 * hf);
        double hp = 1e-5 * std::max(1.0, p);
        double dp = (lagrangian_value(fx.dev, 1, p + hp, f, 0.0, fx.duals, fx.theta, kAcc) -
                     lagrangian_value(fx.dev, 1, p - hp, f, 0.0, fx.duals, fx.theta, kAcc)) /
                    (2.0 * hp);
        worst_fd = std::max({worst_fd, std::abs(df) / tol, std::abs(dp) / tol});
        if (std::abs(df) > tol || std::abs(dp) > tol) ++bad_fd;
    }

    RandomStream triples(919);
    int bad_cubic = 0;
    double worst_cubic = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double b = std::exp(triples.uniform(std::log(1e-2), std::log(1e2)));
        double mu = std::exp(triples.uniform(std::log(1e-2), std::log(1e2)));
        double a = std::exp(triples.uniform(std::log(1e-2), std::log(1e2)));
        double xa = cubic_root_analytic(2.0 * b, mu, a);
        double xb = cubic_root_bisect(2.0 * b, mu, a);
        worst_cubic = std::max(worst_cubic, std::abs(xa - xb));
        if (std::abs(xa - xb) > 1e-9) ++bad_cubic;
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "derivative checks: %d beyond tol (worst %.2ex); cubic routes: %d beyond 1e-9 (worst %.1e)",
                  bad_fd, worst_fd, bad_cubic, worst_cubic);
    detail = buf;
    return bad_fd == 0 && bad_cubic == 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {"C1 inner-block oracle equivalence", c1_inner_oracle, 60.0},
        {"C2 accuracy-search oracle equivalence", c2_theta_oracle, 60.0},
        {"C3 end-to-end optimality at small scale", c3_full_oracle, 300.0},
        {"C4 convergence shape on the default scenario", c4_convergence_shape, 120.0},
        {"C5 baseline ordering", c5_baseline_ordering, 300.0},
        {"C6 energy monotonicity over dataset scale", c6_energy_monotonicity, 300.0},
        {"C7 invariant suite", c7_invariants, 120.0},
        {"C8 stationarity and cubic-route agreement", c8_stationarity, 60.0},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        int k = std::atoi(argv[i]);
        if (k >= 1 && k <= static_cast<int>(criteria.size())) selected.push_back(k - 1);
    }
    if (selected.empty())
        for (std::size_t i = 0; i < criteria.size(); ++i) selected.push_back(static_cast<int>(i));

    int failures = 0;
    for (int idx : selected) {
        const Criterion& c = criteria[static_cast<std::size_t>(idx)];
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = c.run(detail);
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_budget = elapsed <= c.budget_s;
        ok = ok && in_budget;
        std::printf("[%s] %s - %s (%.1fs%s)\n", ok ? "PASS" : "FAIL", c.name, detail.c_str(),
                    elapsed, in_budget ? "" : ", over budget");
        failures += ok ? 0 : 1;
    }
    return failures;
}
