#pragma once

#include <vector>

#include "fedalloc/cost_model.hpp"
#include "fedalloc/dual_solver.hpp"
#include "fedalloc/rng.hpp"

namespace fedalloc {

// Randomized problem instances for oracle cross-checks. Samplers keep the
// closed-form minimizers strictly inside the verification grids (redrawing
// otherwise), so grid agreement checks are meaningful at fixed resolution.

struct PfFixture {
    DeviceProfile dev;
    DeviceDuals duals;
    double theta = 0.5;
};

// Interior-optimum Lagrangian fixture: p* lands in [0.05, 3.5] and f* in
// [0.05, 1.9] by construction.
PfFixture sample_pf_fixture(RandomStream& rng);

// Verification grid matched to sample_pf_fixture's ranges.
inline constexpr double kPfGridPLo = 0.005;
inline constexpr double kPfGridPHi = 4.0;
inline constexpr double kPfGridFLo = 0.005;
inline constexpr double kPfGridFHi = 2.0;

// Random device profile for end-to-end and theta-search checks. With
// wide_budgets the latency budget is generous; otherwise it binds mildly at
// the unconstrained optimum.
DeviceProfile sample_device(RandomStream& rng, bool wide_budgets);

std::vector<DeviceProfile> sample_scenario(RandomStream& rng, int n, bool wide_budgets);

}  // namespace fedalloc
