#pragma once

#include <vector>

#include "fedalloc/cost_model.hpp"
#include "fedalloc/dual_solver.hpp"
#include "fedalloc/harmony.hpp"

namespace fedalloc {

// Brute-force references for the closed-form solvers. Never called from the
// production path; tests and the oracle-check command own them.

// Endpoint-inclusive uniform grid, so doubling the density to 2*points - 1
// nests the coarse grid exactly and refinement can only improve the minimum.
struct AxisSpec {
    double lo = 0.0;
    double hi = 1.0;
    int points = 2;

    void validate() const;
    double at(int i) const {
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    double spacing() const { return (hi - lo) / static_cast<double>(points - 1); }
};

struct GridSpec {
    AxisSpec p;
    AxisSpec f;
    AxisSpec theta;
};

struct PfGridResult {
    double p = 0.0;
    double f = 0.0;
    double value = 0.0;
};

struct ThetaGridResult {
    double theta = 0.0;
    double value = 0.0;
};

struct FullGridResult {
    Allocation allocation;
    double value = 0.0;
};

// Exhaustive scan of the per-device Lagrangian over (p, f); ties resolve to
// the lexicographically smallest grid index.
PfGridResult grid_search_pf(const DeviceProfile& dev, const DeviceDuals& duals, double theta,
                            const AccuracyConfig& acc, const AxisSpec& p_axis,
                            const AxisSpec& f_axis);

// Dense 1-D scan of the penalized worst-case cost.
ThetaGridResult grid_search_theta(const std::vector<DeviceProfile>& devices,
                                  const std::vector<double>& p, const std::vector<double>& f,
                                  const AxisSpec& theta_axis, const HarmonyParams& params,
                                  const AccuracyConfig& acc);

// Joint scan over (theta, f_1..f_N, p_1..p_N) restricted to feasible grid
// points. Guarded to N <= 3; the cell count grows as points^(2N+1).
FullGridResult grid_search_full(const std::vector<DeviceProfile>& devices, const GridSpec& spec,
                                const AccuracyConfig& acc);

}  // namespace fedalloc
