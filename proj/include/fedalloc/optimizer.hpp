#pragma once

#include <string>
#include <vector>

#include "fedalloc/channel.hpp"
#include "fedalloc/cost_model.hpp"
#include "fedalloc/dual_solver.hpp"
#include "fedalloc/harmony.hpp"
#include "fedalloc/rng.hpp"

namespace fedalloc {

struct OptimizerConfig {
    AccuracyConfig accuracy;
    HarmonyParams harmony;
    BlockOptions block;
    double step_scale = 0.5;  // base subgradient step inside the block solver
    double outer_tol = 1e-3;  // relative incumbent improvement threshold
    int outer_max = 20;
    long reject_max = 10000;  // rejection budget for the random baselines
    double feas_eps = 1e-6;   // feasibility slack for accepting candidates
};

struct OptimizationResult {
    Allocation allocation;
    double objective = 0.0;          // worst-case total cost at allocation
    std::vector<double> trace;       // incumbent objective per outer iteration
    std::vector<long> block_iterations;  // dual iterations spent per outer step
    int outer_iterations = 0;
    bool feasible = false;
    std::string method_tag;
};

class infeasible_scenario : public infeasible_error {
public:
    using infeasible_error::infeasible_error;
};

// Optional per-outer-iteration channel drift: advances each device's link
// one slot and re-freezes sigma. Off by default; the solver otherwise treats
// sigma as constant for the whole run.
struct ChannelEvolver {
    ChannelParams params;
    std::vector<ChannelState> states;
    std::vector<RandomStream> streams;

    void advance(std::vector<DeviceProfile>& devices);
};

// Alternates the fixed-theta block solve with a harmony search over theta,
// keeping the best feasible allocation seen. Stops once the incumbent's
// relative improvement stays below outer_tol for two consecutive outer
// iterations. Multipliers warm-start across outer iterations.
OptimizationResult optimize(const std::vector<DeviceProfile>& devices, const OptimizerConfig& cfg,
                            RandomStream& rng, ChannelEvolver* evolver = nullptr);

// One block solve at a fixed accuracy; shared by the random-theta baseline.
OptimizationResult solve_with_fixed_theta(const std::vector<DeviceProfile>& devices,
                                          const OptimizerConfig& cfg, double theta);

// Random (p, f) inside the box and energy caps, rejected until the latency
// budget is attainable for some theta; theta then optimized by harmony
// search.
OptimizationResult baseline_random_pf(const std::vector<DeviceProfile>& devices,
                                      const OptimizerConfig& cfg, RandomStream& rng);

// Uniform theta, one block solve.
OptimizationResult baseline_random_theta(const std::vector<DeviceProfile>& devices,
                                         const OptimizerConfig& cfg, RandomStream& rng);

// Everything drawn feasibly by rejection; no optimization at all.
OptimizationResult baseline_random_all(const std::vector<DeviceProfile>& devices,
                                       const OptimizerConfig& cfg, RandomStream& rng);

}  // namespace fedalloc
