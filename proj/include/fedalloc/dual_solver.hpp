#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fedalloc/cost_model.hpp"
#include "fedalloc/errors.hpp"

namespace fedalloc {

// Multipliers priced on one device's constraints: lam on the latency budget,
// beta on the upload-energy cap, mu on the CPU cap, phi on the epigraph
// inequality (total cost <= xi).
struct DeviceDuals {
    double lam = 0.0;
    double beta = 0.0;
    double mu = 0.0;
    double phi = 0.0;
};

struct DualState {
    std::vector<double> lam, beta, mu, phi;
    long step_iter = 0;       // subgradient iteration counter
    double step_scale = 0.5;  // base step; schedule is step_scale / sqrt(t+1)

    static DualState zeros(std::size_t n, double step_scale = 0.5);
    DeviceDuals at(std::size_t n) const;
    std::size_t size() const { return lam.size(); }
};

// Constraint residuals at the current primal point, one entry per device.
struct Subgradients {
    std::vector<double> g_lam, g_beta, g_mu, g_phi;
};

struct BlockSolution {
    std::vector<double> p;  // W
    std::vector<double> f;  // GHz
    double xi = 0.0;        // worst-case total cost recomputed at (p, f)
    DualState duals;
    long iterations = 0;
    bool converged = false;  // dual movement fell below tol before max_iter
};

struct BlockOptions {
    double tol = 1e-4;       // per-family max-norm movement threshold
    long max_iter = 2500;
    double feas_eps = 1e-7;  // feasibility slack, scaled by (1 + budget)
};

// Optional per-iteration record: the phi-normalized dual lower bound and the
// best feasible objective seen so far (infinity until one exists).
struct BlockDiagnostics {
    std::vector<double> dual_values;
    std::vector<double> best_primal;
};

// Keeps 1/f and 1/sqrt(p) finite; the CPU-cap constraint admits f = 0, which
// is never optimal but must not crash evaluation.
inline constexpr double kFreqFloorGhz = 1e-6;
inline constexpr double kPowerFloorW = 1e-12;

// One device's share of the Lagrangian: xi/n_devices for the objective plus
// the priced constraint residuals. Summing over devices reconstructs the
// full Lagrangian of the epigraph problem.
double lagrangian_value(const DeviceProfile& dev, std::size_t n_devices, double p, double f,
                        double xi, const DeviceDuals& duals, double theta,
                        const AccuracyConfig& acc);

// Minimizer over f in (kFreqFloorGhz, f_max] of the f-dependent Lagrangian
// terms a/f + b f^(zeta-1) + mu f.
double solve_f(const DeviceProfile& dev, const DeviceDuals& duals, double theta,
               const AccuracyConfig& acc);

// Minimizer over p of the p-dependent terms, solved in s = sqrt(p) as
// a'/s + b' s + beta s^2 and projected onto (kPowerFloorW, p_cap].
double solve_p(const DeviceProfile& dev, const DeviceDuals& duals, double theta,
               const AccuracyConfig& acc);

// Worst-case total cost over devices; ties resolve to the lowest index.
double xi_from_primal(const std::vector<DeviceProfile>& devices, const std::vector<double>& p,
                      const std::vector<double>& f, double theta, const AccuracyConfig& acc);
std::size_t argmax_total_cost(const std::vector<DeviceProfile>& devices,
                              const std::vector<double>& p, const std::vector<double>& f,
                              double theta, const AccuracyConfig& acc);

Subgradients subgradients(const std::vector<DeviceProfile>& devices, const std::vector<double>& p,
                          const std::vector<double>& f, double xi, double theta,
                          const AccuracyConfig& acc);

// Projected ascent m <- max{0, m + step(t) g} with step(t) = step_scale /
// sqrt(t+1) clamped into (0, 1); advances the iteration counter.
DualState update_duals(const DualState& duals, const Subgradients& g);

// Lower bound on the optimal worst-case cost: the dual function evaluated
// with phi normalized to sum one (so the epigraph variable drops out).
// Returns -infinity when every phi is zero.
double dual_value(const std::vector<DeviceProfile>& devices, const DualState& duals, double theta,
                  const AccuracyConfig& acc);

class infeasible_block : public infeasible_error {
public:
    infeasible_block(const std::string& what, BlockSolution least)
        : infeasible_error(what), least_violating(std::move(least)) {}
    BlockSolution least_violating;
};

// Fixed-theta subproblem: alternate per-device Lagrangian minimizers with
// projected subgradient updates until every multiplier family moves less
// than tol in max-norm, tracking the best feasible primal point seen.
// Devices whose phi is zero are solved under a shadow unit cost weight, so
// every device always prices its own cost; the stored multipliers keep the
// zeros that complementary slackness prescribes.
BlockSolution solve_block(const std::vector<DeviceProfile>& devices, double theta,
                          const DualState& duals0, const BlockOptions& opts,
                          const AccuracyConfig& acc, BlockDiagnostics* diag = nullptr);

}  // namespace fedalloc
