#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fedalloc/scenario.hpp"

namespace fedalloc {

struct RunRecord {
    std::string method;
    std::uint64_t seed = 0;  // per-run seed, config seed plus the run index
    double objective = 0.0;
    bool feasible = false;
    bool completed = false;  // false when the run raised an infeasibility error
    Allocation allocation;
    double energy_total = 0.0;   // sum over devices of round-scaled energy, J
    double latency_total = 0.0;  // same for latency, s
    double theta = 0.0;
    std::vector<double> trace;
    double wall_time_s = 0.0;  // reported on stdout only, never in CSV
};

struct SweepRecord {
    double multiplier = 1.0;
    std::uint64_t seed = 0;
    double energy_total = 0.0;
    bool completed = false;
};

struct SuiteOptions {
    std::string out_dir = "out";
    int n_seeds = 5;
    std::vector<std::string> methods = {"proposed", "random_pf", "random_theta", "random_all"};
    bool run_sweep = true;
    int jobs = 0;  // 0 picks hardware concurrency
};

struct SuiteResult {
    std::vector<RunRecord> records;
    std::vector<SweepRecord> sweep;
};

inline const std::vector<double> kSweepMultipliers = {1.0, 1.2, 1.4, 1.6, 1.8, 2.0};

// Runs every requested method on the same generated scenario per seed and
// writes convergence.csv, comparison.csv and energy_sweep.csv under
// opts.out_dir. Runs are keyed by derived streams, so the CSV bytes are
// independent of scheduling; infeasible runs become flagged rows.
SuiteResult run_suite(const ScenarioConfig& cfg, const SuiteOptions& opts);

// Per-method mean/min/max objective, feasibility counts and the win rate of
// the proposed method. Returns the process exit code: 0 iff every run
// completed (flagged infeasible rows only produce a warning).
int report(const std::vector<RunRecord>& records, std::ostream& os);

std::vector<RunRecord> read_comparison_csv(const std::string& path);

// One run of a single method; exposed for tests.
RunRecord run_method(const ScenarioConfig& cfg, const std::string& method, std::uint64_t run_seed);

}  // namespace fedalloc
