#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fedalloc/channel.hpp"
#include "fedalloc/cost_model.hpp"
#include "fedalloc/optimizer.hpp"

namespace fedalloc {

// Benchmark scenario description. Defaults reproduce the standard urban
// preset: ten devices, 5-10 MB datasets at 40 cycles/byte, 4.5 KB uploads,
// 4 s latency and 20 J upload budgets, equal cost weights. The config file
// is a flat JSON object with one key per field; unknown keys are rejected.
struct ScenarioConfig {
    std::uint64_t seed = 0;  // mandatory in files
    bool seed_set = false;

    int n_devices = 10;
    bool n_devices_set = false;
    double arrival_rate = 0.0;  // devices per unit time; Poisson count when set
    bool arrival_rate_set = false;

    // Scene metadata only; carried through but not used quantitatively.
    double coverage_radius_m = 150.0;
    double fl_area_m = 100.0;

    double dataset_min_bytes = 5e6;
    double dataset_max_bytes = 10e6;
    double dataset_scale = 1.0;  // multiplier for sweep experiments

    double b_cycles = 40.0;
    double c_payload_bytes = 4500.0;
    double rho = 0.05;
    double zeta = 3.0;
    double t_max_s = 4.0;
    double f_max_ghz = 2.0;
    double e_up_max_j = 20.0;
    double w_time = 0.5;
    bool w_time_set = false;
    double w_energy = 0.5;
    bool w_energy_set = false;

    ChannelParams channel;
    int burn_in_slots = 50;
    bool resample_sigma = false;  // re-freeze sigma every outer iteration

    AccuracyConfig accuracy;
    HarmonyParams harmony;
    double step_scale = 0.5;
    double dual_tol = 1e-4;
    long dual_max_iter = 2500;
    double outer_tol = 1e-3;
    int outer_max = 20;
    long reject_max = 10000;

    void validate() const;
    OptimizerConfig optimizer_config() const;
    DeviceProfile device_preset() const;  // everything but d_size and sigma
};

// Parses and validates a flat JSON config; error messages name the
// offending key. A lone {"seed": N} materializes the full default preset.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& text);

struct GeneratedScenario {
    std::vector<DeviceProfile> devices;
    std::vector<ChannelState> channels;       // post burn-in states
    std::vector<RandomStream> channel_streams;  // continuations for resampling
};

// Device list with sigma frozen after burn-in. Streams are keyed by
// (run_seed, device index, purpose), so the list is independent of
// evaluation order and of the device count.
std::vector<DeviceProfile> generate_scenario(const ScenarioConfig& cfg, std::uint64_t run_seed);
GeneratedScenario generate_scenario_rich(const ScenarioConfig& cfg, std::uint64_t run_seed);

}  // namespace fedalloc
