#include "fedalloc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fedalloc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool allocation_feasible(const std::vector<DeviceProfile>& devices, const std::vector<double>& p,
                         const std::vector<double>& f, double theta, double eps) {
    if (!(theta > 0.0 && theta < 1.0)) return false;
    for (std::size_t i = 0; i < devices.size(); ++i) {
        FeasibilityResiduals r = feasibility_residuals(devices[i], p[i], f[i], theta);
        if (!within_budgets(devices[i], r, eps)) return false;
    }
    return true;
}

struct Incumbent {
    Allocation allocation;
    double objective = kInf;
    bool valid = false;

    // Strict improvement only, so the trace is non-increasing.
    void offer(const std::vector<DeviceProfile>& devices, const std::vector<double>& p,
               const std::vector<double>& f, double theta, const OptimizerConfig& cfg) {
        if (!allocation_feasible(devices, p, f, theta, cfg.feas_eps)) return;
        double obj = xi_from_primal(devices, p, f, theta, cfg.accuracy);
        if (!valid || obj < objective) {
            allocation = Allocation{p, f, theta};
            objective = obj;
            valid = true;
        }
    }
};

double draw_positive(RandomStream& rng, double hi, double floor_value) {
    return std::max(rng.uniform(0.0, hi), floor_value);
}

// Latency budget attainable for some shared accuracy iff it holds at the
// loosest compute point theta_hi.
bool latency_attainable(const DeviceProfile& dev, double p, double f,
                        const AccuracyConfig& acc) {
    return t_cmp(dev, f, acc.theta_hi) + t_up(dev, p) <= dev.t_max;
}

}  // namespace

void ChannelEvolver::advance(std::vector<DeviceProfile>& devices) {
    for (std::size_t i = 0; i < devices.size(); ++i) {
        states[i] = advance_slot(states[i], streams[i], params);
        devices[i].sigma = sigma(states[i]);
    }
}

OptimizationResult optimize(const std::vector<DeviceProfile>& devices_in,
                            const OptimizerConfig& cfg, RandomStream& rng,
                            ChannelEvolver* evolver) {
    if (devices_in.empty()) throw invalid_parameter("optimize: empty device list");
    cfg.accuracy.validate();
    cfg.harmony.validate();
    std::vector<DeviceProfile> devices = devices_in;
    for (const auto& dev : devices) dev.validate();

    std::size_t n = devices.size();
    const AccuracyConfig& acc = cfg.accuracy;
    double theta = std::clamp(0.5, acc.theta_lo, acc.theta_hi);
    DualState duals = DualState::zeros(n, cfg.step_scale);

    OptimizationResult result;
    result.method_tag = "proposed";
    Incumbent incumbent;
    int attempted_blocks = 0;
    int infeasible_blocks = 0;
    int flat_streak = 0;
    double prev_objective = kInf;
    std::vector<double> p_cur, f_cur;

    for (int outer = 0; outer < cfg.outer_max; ++outer) {
        if (evolver && outer > 0) evolver->advance(devices);

        ++attempted_blocks;
        long block_iters = 0;
        try {
            BlockSolution sol = solve_block(devices, theta, duals, cfg.block, acc);
            duals = sol.duals;
            p_cur = sol.p;
            f_cur = sol.f;
            block_iters = sol.iterations;
            incumbent.offer(devices, p_cur, f_cur, theta, cfg);
        } catch (const infeasible_block& e) {
            // Carry on from the least-violating point; the accuracy step can
            // restore latency feasibility.
            ++infeasible_blocks;
            duals = e.least_violating.duals;
            p_cur = e.least_violating.p;
            f_cur = e.least_violating.f;
            block_iters = e.least_violating.iterations;
        }
        result.block_iterations.push_back(block_iters);

        auto objective = [&](double th) {
            return penalized_objective(th, devices, p_cur, f_cur, cfg.harmony, acc);
        };
        HarmonyResult hs = harmony_search(objective, acc.theta_lo, acc.theta_hi, cfg.harmony, rng);
        theta = hs.theta;
        incumbent.offer(devices, p_cur, f_cur, theta, cfg);

        result.trace.push_back(incumbent.valid ? incumbent.objective : kInf);
        ++result.outer_iterations;

        if (incumbent.valid && std::isfinite(prev_objective)) {
            double rel = (prev_objective - incumbent.objective) /
                         std::max(std::abs(prev_objective), 1e-300);
            flat_streak = rel < cfg.outer_tol ? flat_streak + 1 : 0;
            if (flat_streak >= 2) {
                prev_objective = incumbent.objective;
                break;
            }
        }
        prev_objective = incumbent.valid ? incumbent.objective : kInf;
    }

    if (!incumbent.valid) {
        throw infeasible_scenario(
            "optimize: no feasible allocation found (" + std::to_string(infeasible_blocks) + "/" +
            std::to_string(attempted_blocks) + " block solves infeasible over " +
            std::to_string(result.outer_iterations) + " outer iterations)");
    }

    result.allocation = incumbent.allocation;
    if (evolver) {
        // Costs drift with sigma; report the incumbent against the final link state.
        result.objective = xi_from_primal(devices, incumbent.allocation.p, incumbent.allocation.f,
                                          incumbent.allocation.theta, acc);
        result.feasible = allocation_feasible(devices, incumbent.allocation.p,
                                              incumbent.allocation.f, incumbent.allocation.theta,
                                              cfg.feas_eps);
    } else {
        result.objective = incumbent.objective;
        result.feasible = true;
    }
    return result;
}

OptimizationResult solve_with_fixed_theta(const std::vector<DeviceProfile>& devices,
                                          const OptimizerConfig& cfg, double theta) {
    BlockSolution sol =
        solve_block(devices, theta, DualState::zeros(devices.size(), cfg.step_scale), cfg.block,
                    cfg.accuracy);
    OptimizationResult result;
    result.allocation = Allocation{sol.p, sol.f, theta};
    result.objective = sol.xi;
    result.trace = {sol.xi};
    result.block_iterations = {sol.iterations};
    result.outer_iterations = 1;
    result.feasible = true;
    result.method_tag = "random_theta";
    return result;
}

OptimizationResult baseline_random_pf(const std::vector<DeviceProfile>& devices,
                                      const OptimizerConfig& cfg, RandomStream& rng) {
    if (devices.empty()) throw invalid_parameter("baseline_random_pf: empty device list");
    const AccuracyConfig& acc = cfg.accuracy;
    std::size_t n = devices.size();
    std::vector<double> p(n), f(n);
    for (std::size_t i = 0; i < n; ++i) {
        long tries = 0;
        for (;;) {
            p[i] = draw_positive(rng, devices[i].p_cap(), kPowerFloorW);
            f[i] = draw_positive(rng, devices[i].f_max, kFreqFloorGhz);
            if (latency_attainable(devices[i], p[i], f[i], acc)) break;
            if (++tries >= cfg.reject_max)
                throw infeasible_scenario("baseline_random_pf: rejection budget exhausted on device " +
                                          std::to_string(i));
        }
    }
    auto objective = [&](double th) {
        return penalized_objective(th, devices, p, f, cfg.harmony, acc);
    };
    HarmonyResult hs = harmony_search(objective, acc.theta_lo, acc.theta_hi, cfg.harmony, rng);

    OptimizationResult result;
    result.allocation = Allocation{p, f, hs.theta};
    result.objective = xi_from_primal(devices, p, f, hs.theta, acc);
    result.trace = {result.objective};
    result.outer_iterations = 1;
    result.feasible = allocation_feasible(devices, p, f, hs.theta, cfg.feas_eps);
    result.method_tag = "random_pf";
    return result;
}

OptimizationResult baseline_random_theta(const std::vector<DeviceProfile>& devices,
                                         const OptimizerConfig& cfg, RandomStream& rng) {
    if (devices.empty()) throw invalid_parameter("baseline_random_theta: empty device list");
    double theta = rng.uniform(cfg.accuracy.theta_lo, cfg.accuracy.theta_hi);
    return solve_with_fixed_theta(devices, cfg, theta);
}

OptimizationResult baseline_random_all(const std::vector<DeviceProfile>& devices,
                                       const OptimizerConfig& cfg, RandomStream& rng) {
    if (devices.empty()) throw invalid_parameter("baseline_random_all: empty device list");
    const AccuracyConfig& acc = cfg.accuracy;
    std::size_t n = devices.size();
    double theta = rng.uniform(acc.theta_lo, acc.theta_hi);
    std::vector<double> p(n), f(n);
    for (std::size_t i = 0; i < n; ++i) {
        long tries = 0;
        for (;;) {
            p[i] = draw_positive(rng, devices[i].p_cap(), kPowerFloorW);
            f[i] = draw_positive(rng, devices[i].f_max, kFreqFloorGhz);
            FeasibilityResiduals r = feasibility_residuals(devices[i], p[i], f[i], theta);
            if (r.latency <= 0.0 && r.energy <= 0.0 && r.frequency <= 0.0) break;
            if (++tries >= cfg.reject_max)
                throw infeasible_scenario("baseline_random_all: rejection budget exhausted on device " +
                                          std::to_string(i));
        }
    }
    OptimizationResult result;
    result.allocation = Allocation{p, f, theta};
    result.objective = xi_from_primal(devices, p, f, theta, acc);
    result.trace = {result.objective};
    result.outer_iterations = 0;
    result.feasible = true;
    result.method_tag = "random_all";
    return result;
}

}  // namespace fedalloc
