#include "fedalloc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fedalloc/errors.hpp"

namespace fedalloc {

void ScenarioConfig::validate() const {
    if (!seed_set) throw invalid_parameter("config: missing required key 'seed'");
    if (n_devices_set && arrival_rate_set)
        throw invalid_parameter("config: set either 'n_devices' or 'arrival_rate', not both");
    if (n_devices < 1) throw invalid_parameter("config: 'n_devices' must be >= 1");
    if (arrival_rate_set && !(arrival_rate > 0.0))
        throw invalid_parameter("config: 'arrival_rate' must be > 0");
    if (!(dataset_min_bytes > 0.0) || !(dataset_min_bytes < dataset_max_bytes))
        throw invalid_parameter("config: need 0 < 'dataset_min_bytes' < 'dataset_max_bytes'");
    if (!(dataset_scale > 0.0)) throw invalid_parameter("config: 'dataset_scale' must be > 0");
    if (std::abs(w_time + w_energy - 1.0) > 1e-9)
        throw invalid_parameter("config: 'w_time' + 'w_energy' must equal 1");
    if (!(w_time >= 0.0 && w_time <= 1.0))
        throw invalid_parameter("config: 'w_time' must lie in [0, 1]");
    if (burn_in_slots < 1) throw invalid_parameter("config: 'burn_in_slots' must be >= 1");
    if (!(step_scale > 0.0)) throw invalid_parameter("config: 'step_scale' must be > 0");
    if (!(dual_tol > 0.0)) throw invalid_parameter("config: 'dual_tol' must be > 0");
    if (dual_max_iter < 1) throw invalid_parameter("config: 'dual_max_iter' must be >= 1");
    if (!(outer_tol > 0.0)) throw invalid_parameter("config: 'outer_tol' must be > 0");
    if (outer_max < 1) throw invalid_parameter("config: 'outer_max' must be >= 1");
    if (reject_max < 1) throw invalid_parameter("config: 'reject_max' must be >= 1");
    channel.validate();
    accuracy.validate();
    harmony.validate();
    device_preset().validate();
}

OptimizerConfig ScenarioConfig::optimizer_config() const {
    OptimizerConfig cfg;
    cfg.accuracy = accuracy;
    cfg.harmony = harmony;
    cfg.block.tol = dual_tol;
    cfg.block.max_iter = dual_max_iter;
    cfg.step_scale = step_scale;
    cfg.outer_tol = outer_tol;
    cfg.outer_max = outer_max;
    cfg.reject_max = reject_max;
    return cfg;
}

DeviceProfile ScenarioConfig::device_preset() const {
    DeviceProfile dev;
    dev.d_size = 0.5 * (dataset_min_bytes + dataset_max_bytes) * dataset_scale;
    dev.b_cycles = b_cycles;
    dev.c_payload = c_payload_bytes;
    dev.rho = rho;
    dev.zeta = zeta;
    dev.f_max = f_max_ghz;
    dev.t_max = t_max_s;
    dev.e_up_max = e_up_max_j;
    dev.w_time = w_time;
    dev.w_energy = w_energy;
    dev.sigma = 1.0;  // placeholder until the channel freezes it
    return dev;
}

namespace {

using nlohmann::json;

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw invalid_parameter("config: key '" + key + "' must be a number");
    return v.get<double>();
}

long as_integer(const json& v, const std::string& key) {
    if (!v.is_number_integer())
        throw invalid_parameter("config: key '" + key + "' must be an integer");
    return v.get<long>();
}

bool as_bool(const json& v, const std::string& key) {
    if (!v.is_boolean()) throw invalid_parameter("config: key '" + key + "' must be a boolean");
    return v.get<bool>();
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw invalid_parameter(std::string("config: parse error: ") + e.what());
    }
    if (!doc.is_object()) throw invalid_parameter("config: top level must be an object");

    ScenarioConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "seed") {
            if (!value.is_number_integer() && !value.is_number_unsigned())
                throw invalid_parameter("config: key 'seed' must be an integer");
            cfg.seed = value.get<std::uint64_t>();
            cfg.seed_set = true;
        } else if (key == "n_devices") {
            cfg.n_devices = static_cast<int>(as_integer(value, key));
            cfg.n_devices_set = true;
        } else if (key == "arrival_rate") {
            cfg.arrival_rate = as_number(value, key);
            cfg.arrival_rate_set = true;
        } else if (key == "coverage_radius_m") {
            cfg.coverage_radius_m = as_number(value, key);
        } else if (key == "fl_area_m") {
            cfg.fl_area_m = as_number(value, key);
        } else if (key == "dataset_min_bytes") {
            cfg.dataset_min_bytes = as_number(value, key);
        } else if (key == "dataset_max_bytes") {
            cfg.dataset_max_bytes = as_number(value, key);
        } else if (key == "dataset_scale") {
            cfg.dataset_scale = as_number(value, key);
        } else if (key == "b_cycles") {
            cfg.b_cycles = as_number(value, key);
        } else if (key == "c_payload_bytes") {
            cfg.c_payload_bytes = as_number(value, key);
        } else if (key == "rho") {
            cfg.rho = as_number(value, key);
        } else if (key == "zeta") {
            cfg.zeta = as_number(value, key);
        } else if (key == "t_max_s") {
            cfg.t_max_s = as_number(value, key);
        } else if (key == "f_max_ghz") {
            cfg.f_max_ghz = as_number(value, key);
        } else if (key == "e_up_max_j") {
            cfg.e_up_max_j = as_number(value, key);
        } else if (key == "w_time") {
            cfg.w_time = as_number(value, key);
            cfg.w_time_set = true;
        } else if (key == "w_energy") {
            cfg.w_energy = as_number(value, key);
            cfg.w_energy_set = true;
        } else if (key == "mss_bytes") {
            cfg.channel.mss = as_number(value, key);
        } else if (key == "loss_a") {
            cfg.channel.loss_a = as_number(value, key);
        } else if (key == "loss_b") {
            cfg.channel.loss_b = as_number(value, key);
        } else if (key == "loss_c") {
            cfg.channel.loss_c = as_number(value, key);
        } else if (key == "b_acked") {
            cfg.channel.b_acked = as_number(value, key);
        } else if (key == "a0") {
            cfg.channel.a0 = as_number(value, key);
        } else if (key == "delta_ip_max_s") {
            cfg.channel.delta_ip_max = as_number(value, key);
        } else if (key == "x_corr") {
            cfg.channel.x_corr = as_number(value, key);
        } else if (key == "burn_in_slots") {
            cfg.burn_in_slots = static_cast<int>(as_integer(value, key));
        } else if (key == "resample_sigma") {
            cfg.resample_sigma = as_bool(value, key);
        } else if (key == "theta_lo") {
            cfg.accuracy.theta_lo = as_number(value, key);
        } else if (key == "theta_hi") {
            cfg.accuracy.theta_hi = as_number(value, key);
        } else if (key == "epsilon_factor") {
            cfg.accuracy.epsilon_factor = as_number(value, key);
        } else if (key == "hms") {
            cfg.harmony.hms = static_cast<int>(as_integer(value, key));
        } else if (key == "hmcr_mean") {
            cfg.harmony.hmcr_mean = as_number(value, key);
        } else if (key == "hmcr_sd") {
            cfg.harmony.hmcr_sd = as_number(value, key);
        } else if (key == "par_mean") {
            cfg.harmony.par_mean = as_number(value, key);
        } else if (key == "par_sd") {
            cfg.harmony.par_sd = as_number(value, key);
        } else if (key == "bw_min") {
            cfg.harmony.bw_min = as_number(value, key);
        } else if (key == "bw_max") {
            cfg.harmony.bw_max = as_number(value, key);
        } else if (key == "t_max_improv") {
            cfg.harmony.t_max_improv = as_integer(value, key);
        } else if (key == "penalty_delta") {
            cfg.harmony.penalty_delta = as_number(value, key);
        } else if (key == "step_scale") {
            cfg.step_scale = as_number(value, key);
        } else if (key == "dual_tol") {
            cfg.dual_tol = as_number(value, key);
        } else if (key == "dual_max_iter") {
            cfg.dual_max_iter = as_integer(value, key);
        } else if (key == "outer_tol") {
            cfg.outer_tol = as_number(value, key);
        } else if (key == "outer_max") {
            cfg.outer_max = static_cast<int>(as_integer(value, key));
        } else if (key == "reject_max") {
            cfg.reject_max = as_integer(value, key);
        } else {
            throw invalid_parameter("config: unknown key '" + key + "'");
        }
    }

    // Weight identity: fill the missing side, check a doubly-specified pair.
    if (cfg.w_time_set && !cfg.w_energy_set) {
        cfg.w_energy = 1.0 - cfg.w_time;
    } else if (cfg.w_energy_set && !cfg.w_time_set) {
        cfg.w_time = 1.0 - cfg.w_energy;
    }
    cfg.accuracy.theta = std::clamp(0.5, cfg.accuracy.theta_lo, cfg.accuracy.theta_hi);
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_parameter("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

GeneratedScenario generate_scenario_rich(const ScenarioConfig& cfg, std::uint64_t run_seed) {
    cfg.channel.validate();
    std::size_t count;
    if (cfg.n_devices_set || !cfg.arrival_rate_set) {
        count = static_cast<std::size_t>(cfg.n_devices);
    } else {
        RandomStream arrivals = RandomStream::derive(run_seed, 0, StreamTag::scenario);
        count = static_cast<std::size_t>(std::max(1, arrivals.poisson(cfg.arrival_rate)));
    }

    GeneratedScenario out;
    out.devices.reserve(count);
    out.channels.reserve(count);
    out.channel_streams.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        RandomStream profile = RandomStream::derive(run_seed, i, StreamTag::profile);
        DeviceProfile dev = cfg.device_preset();
        dev.d_size = profile.uniform(cfg.dataset_min_bytes, cfg.dataset_max_bytes) *
                     cfg.dataset_scale;

        RandomStream link = RandomStream::derive(run_seed, i, StreamTag::channel);
        ChannelState state = make_channel_state(cfg.channel);
        for (int slot = 0; slot < cfg.burn_in_slots; ++slot)
            state = advance_slot(state, link, cfg.channel);
        dev.sigma = sigma(state);
        dev.validate();

        out.devices.push_back(dev);
        out.channels.push_back(state);
        out.channel_streams.push_back(link);
    }
    return out;
}

std::vector<DeviceProfile> generate_scenario(const ScenarioConfig& cfg, std::uint64_t run_seed) {
    return generate_scenario_rich(cfg, run_seed).devices;
}

}  // namespace fedalloc
