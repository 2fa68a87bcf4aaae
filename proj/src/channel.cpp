#include "fedalloc/channel.hpp"

#include <algorithm>
#include <cmath>

#include "fedalloc/errors.hpp"

namespace fedalloc {

namespace {
constexpr double kSqrt3 = 1.7320508075688772;
}

void ChannelParams::validate() const {
    if (!(mss > 0.0)) throw invalid_parameter("channel: mss must be > 0");
    if (!(loss_a > 0.0) || !(loss_b > 0.0) || !(loss_c > 0.0))
        throw invalid_parameter("channel: loss constants must be > 0");
    if (!(b_acked > 0.0)) throw invalid_parameter("channel: b_acked must be > 0");
    if (!(a0 > 0.0)) throw invalid_parameter("channel: a0 must be > 0");
    if (!(delta_ip_max > 0.0)) throw invalid_parameter("channel: delta_ip_max must be > 0");
    if (!(x_corr >= 0.0 && x_corr < 1.0))
        throw invalid_parameter("channel: x_corr must lie in [0, 1)");
}

double k0_constant(const ChannelParams& params) {
    params.validate();
    double gamma_term = std::exp(-params.loss_c * params.loss_b);
    double denom = params.loss_c +
                   params.loss_a / (params.loss_c * params.loss_b * params.loss_b) * gamma_term;
    return std::sqrt(3.0 / (2.0 * params.b_acked)) * params.mss / std::sqrt(denom);
}

ChannelState make_channel_state(const ChannelParams& params) {
    ChannelState state;
    state.k0 = k0_constant(params);
    state.x = 0.0;
    state.z = params.a0;  // a0 * 10^0
    return state;
}

double sample_delta_ip(RandomStream& rng, const ChannelParams& params) {
    if (!(params.delta_ip_max > 0.0))
        throw invalid_parameter("channel: delta_ip_max must be > 0");
    return rng.uniform(0.0, params.delta_ip_max);
}

double step_rtt(double prev_rtt, double delta_ip) {
    if (prev_rtt < 0.0 || delta_ip < 0.0)
        throw invalid_parameter("channel: RTT inputs must be nonnegative");
    return 0.75 * prev_rtt + 0.25 * delta_ip;
}

ChannelState step_shadowing(const ChannelState& state, RandomStream& rng,
                            const ChannelParams& params) {
    double u = rng.uniform(-kSqrt3, kSqrt3);
    double x = params.x_corr * state.x +
               std::sqrt(1.0 - params.x_corr * params.x_corr) * u;
    x = std::clamp(x, -kSqrt3, kSqrt3);
    ChannelState out = state;
    out.x = x;
    out.z = params.a0 * std::pow(10.0, 0.1 * x);
    return out;
}

double sigma(const ChannelState& state) {
    if (state.t < 1 || !(state.rtt > 0.0))
        throw channel_not_warmed("channel: sigma undefined before the first RTT update");
    return state.k0 * std::sqrt(state.z) / state.rtt;
}

double data_rate(double sigma_value, double p) {
    if (!(sigma_value > 0.0)) throw invalid_parameter("channel: sigma must be > 0");
    if (p < 0.0) throw invalid_parameter("channel: power must be nonnegative");
    return sigma_value * std::sqrt(p);
}

ChannelState advance_slot(const ChannelState& state, RandomStream& rng,
                          const ChannelParams& params) {
    double delta = sample_delta_ip(rng, params);
    ChannelState out = step_shadowing(state, rng, params);
    out.rtt = step_rtt(state.rtt, delta);
    out.t = state.t + 1;
    out.sigma = out.rtt > 0.0 ? out.k0 * std::sqrt(out.z) / out.rtt : 0.0;
    return out;
}

}  // namespace fedalloc
