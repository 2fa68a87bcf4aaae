#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "fedalloc/cost_model.hpp"
#include "fedalloc/rng.hpp"

namespace fedalloc {

// Self-adaptive global-best harmony search over the shared local accuracy.
// The consideration and pitch-adjustment rates are redrawn from clipped
// normals every improvisation; the bandwidth shrinks linearly to bw_min over
// the first half of the budget.
struct HarmonyParams {
    int hms = 5;               // harmony memory size
    double hmcr_mean = 0.98;   // memory-consideration rate, clipped to [0.9, 1]
    double hmcr_sd = 0.01;
    double par_mean = 0.9;     // pitch-adjustment rate, clipped to [0, 1]
    double par_sd = 0.05;
    double bw_min = 5e-4;      // perturbation bandwidth, theta units
    double bw_max = 0.05;
    long t_max_improv = 5000;  // improvisation budget
    double penalty_delta = 1e-3;  // latency-violation penalty scale; weight is 1/delta

    void validate() const;
};

inline constexpr double kHmcrClipLo = 0.9;
inline constexpr double kHmcrClipHi = 1.0;
inline constexpr double kParClipLo = 0.0;
inline constexpr double kParClipHi = 1.0;

struct HarmonySlot {
    double theta = 0.0;
    double value = 0.0;
};

struct HarmonyMemory {
    std::vector<HarmonySlot> slots;
    std::size_t best_index = 0;   // lowest index among ties
    std::size_t worst_index = 0;

    void refresh_indices();
};

struct HarmonyResult {
    double theta = 0.0;
    double value = 0.0;
    std::vector<double> trace;        // best slot value, initial state first
    std::vector<double> worst_trace;  // worst slot value, same indexing
    HarmonyMemory memory;
};

// Worst-case total cost at (p, f, theta) plus 1/delta times the summed
// latency-budget overshoots. Hinge terms are accumulated in sorted order so
// the value is independent of device ordering.
double penalized_objective(double theta, const std::vector<DeviceProfile>& devices,
                           const std::vector<double>& p, const std::vector<double>& f,
                           const HarmonyParams& params, const AccuracyConfig& acc);

// bw_max shrinking linearly to bw_min at t = t_max_improv / 2, bw_min after.
double bw_schedule(long t, const HarmonyParams& params);

// (hmcr, par); consumes two normal draws in that order.
std::pair<double, double> draw_rates(RandomStream& rng, const HarmonyParams& params);

// Candidate generation with externally supplied rates. Draw order within:
// branch uniform l1; memory branch then slot pick, sign coin, step uniform l,
// pitch uniform l2; random branch a single uniform l.
double improvise_with_rates(const HarmonyMemory& hm, long t, double hmcr, double par,
                            RandomStream& rng, const HarmonyParams& params, double lo, double hi);

// Full improvisation: draw_rates followed by improvise_with_rates.
double improvise(const HarmonyMemory& hm, long t, RandomStream& rng, const HarmonyParams& params,
                 double lo, double hi);

// Runs the search on [lo, hi]; a candidate replaces the worst slot only on
// strict improvement, so both traces are non-increasing.
HarmonyResult harmony_search(const std::function<double(double)>& objective, double lo, double hi,
                             const HarmonyParams& params, RandomStream& rng);

}  // namespace fedalloc
