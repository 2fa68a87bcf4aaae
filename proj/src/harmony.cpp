#include "fedalloc/harmony.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fedalloc/errors.hpp"

namespace fedalloc {

void HarmonyParams::validate() const {
    if (hms < 2) throw invalid_parameter("harmony: hms must be >= 2");
    if (!(bw_min > 0.0 && bw_min <= bw_max))
        throw invalid_parameter("harmony: need 0 < bw_min <= bw_max");
    if (t_max_improv < 1) throw invalid_parameter("harmony: t_max_improv must be >= 1");
    if (!(penalty_delta > 0.0)) throw invalid_parameter("harmony: penalty_delta must be > 0");
    if (!(hmcr_sd >= 0.0) || !(par_sd >= 0.0))
        throw invalid_parameter("harmony: rate deviations must be >= 0");
}

void HarmonyMemory::refresh_indices() {
    best_index = 0;
    worst_index = 0;
    for (std::size_t i = 1; i < slots.size(); ++i) {
        if (slots[i].value < slots[best_index].value) best_index = i;
        if (slots[i].value > slots[worst_index].value) worst_index = i;
    }
}

double penalized_objective(double theta, const std::vector<DeviceProfile>& devices,
                           const std::vector<double>& p, const std::vector<double>& f,
                           const HarmonyParams& params, const AccuracyConfig& acc) {
    if (!(theta > 0.0 && theta < 1.0))
        throw invalid_parameter("penalized_objective: theta must lie in (0, 1)");
    if (devices.empty() || devices.size() != p.size() || devices.size() != f.size())
        throw invalid_parameter("penalized_objective: size mismatch");
    double worst = 0.0;
    std::vector<double> hinges;
    for (std::size_t n = 0; n < devices.size(); ++n) {
        DeviceCost c = total_cost(devices[n], p[n], f[n], theta, acc);
        worst = std::max(worst, c.total);
        double overshoot = c.t_cmp + c.t_up - devices[n].t_max;
        if (overshoot > 0.0) hinges.push_back(overshoot);
    }
    std::sort(hinges.begin(), hinges.end());
    double penalty = 0.0;
    for (double h : hinges) penalty += h;
    return worst + penalty / params.penalty_delta;
}

double bw_schedule(long t, const HarmonyParams& params) {
    if (2 * t < params.t_max_improv) {
        return params.bw_max -
               (params.bw_max - params.bw_min) / static_cast<double>(params.t_max_improv) *
                   (2.0 * static_cast<double>(t));
    }
    return params.bw_min;
}

std::pair<double, double> draw_rates(RandomStream& rng, const HarmonyParams& params) {
    double hmcr = std::clamp(rng.normal(params.hmcr_mean, params.hmcr_sd), kHmcrClipLo, kHmcrClipHi);
    double par = std::clamp(rng.normal(params.par_mean, params.par_sd), kParClipLo, kParClipHi);
    return {hmcr, par};
}

double improvise_with_rates(const HarmonyMemory& hm, long t, double hmcr, double par,
                            RandomStream& rng, const HarmonyParams& params, double lo, double hi) {
    if (hm.slots.empty()) throw invalid_parameter("improvise: empty harmony memory");
    double l1 = rng.uniform01();
    double candidate;
    if (l1 < hmcr) {
        std::size_t slot = rng.pick(hm.slots.size());
        double sign = rng.coin() ? 1.0 : -1.0;
        double l = rng.uniform01();
        candidate = hm.slots[slot].theta + sign * l * bw_schedule(t, params);
        double l2 = rng.uniform01();
        if (l2 < par) candidate = hm.slots[hm.best_index].theta;
    } else {
        double l = rng.uniform01();
        candidate = lo + l * (hi - lo);
    }
    return std::clamp(candidate, lo, hi);
}

double improvise(const HarmonyMemory& hm, long t, RandomStream& rng, const HarmonyParams& params,
                 double lo, double hi) {
    auto [hmcr, par] = draw_rates(rng, params);
    return improvise_with_rates(hm, t, hmcr, par, rng, params, lo, hi);
}

namespace {

double checked_eval(const std::function<double(double)>& objective, double theta) {
    double v = objective(theta);
    if (!std::isfinite(v))
        throw objective_evaluation_error(
            "harmony_search: objective non-finite at theta = " + std::to_string(theta), theta);
    return v;
}

}  // namespace

HarmonyResult harmony_search(const std::function<double(double)>& objective, double lo, double hi,
                             const HarmonyParams& params, RandomStream& rng) {
    params.validate();
    if (!(lo < hi)) throw invalid_parameter("harmony_search: need lo < hi");

    HarmonyResult result;
    HarmonyMemory& hm = result.memory;
    hm.slots.resize(static_cast<std::size_t>(params.hms));
    for (auto& slot : hm.slots) {
        slot.theta = lo + rng.uniform01() * (hi - lo);
        slot.value = checked_eval(objective, slot.theta);
    }
    hm.refresh_indices();
    result.trace.push_back(hm.slots[hm.best_index].value);
    result.worst_trace.push_back(hm.slots[hm.worst_index].value);

    for (long t = 0; t < params.t_max_improv; ++t) {
        double candidate = improvise(hm, t, rng, params, lo, hi);
        double value = checked_eval(objective, candidate);
        if (value < hm.slots[hm.worst_index].value) {
            hm.slots[hm.worst_index] = HarmonySlot{candidate, value};
            hm.refresh_indices();
        }
        result.trace.push_back(hm.slots[hm.best_index].value);
        result.worst_trace.push_back(hm.slots[hm.worst_index].value);
    }

    result.theta = hm.slots[hm.best_index].theta;
    result.value = hm.slots[hm.best_index].value;
    return result;
}

}  // namespace fedalloc
