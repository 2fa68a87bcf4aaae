#pragma once

#include "fedalloc/rng.hpp"

namespace fedalloc {

// Steady-state TCP link model: smoothed RTT driven by uniform packet delays,
// log-scale shadowing with an AR(1) driver, and a throughput constant k0.
// The resulting connection coefficient sigma turns transmit power into a
// data rate via rate = sigma * sqrt(p).
struct ChannelParams {
    double mss = 1460.0;        // segment size, bytes
    double loss_a = 90.2514;    // FEC error-performance constants
    double loss_b = 3.4998;
    double loss_c = 1.0942;
    double b_acked = 2.0;       // segments per ACK
    double a0 = 0.9738;         // shadowing scale
    double delta_ip_max = 1.1;  // max IP-layer packet delay, s
    double x_corr = 0.9;        // AR(1) correlation of the shadowing driver, [0, 1)

    void validate() const;
};

struct ChannelState {
    double rtt = 0.0;    // smoothed round-trip time, s; 0 only at slot 0
    double x = 0.0;      // shadowing driver, kept in [-sqrt(3), sqrt(3)]
    double z = 0.0;      // shadowing gain, always a0 * 10^(0.1 x)
    double k0 = 0.0;     // throughput constant, bytes/s per sqrt(W) before the 1/RTT factor
    double sigma = 0.0;  // k0 * sqrt(z) / rtt; meaningful from slot 1 on
    long t = 0;          // slot index
};

// Throughput constant; the two-parameter gamma factor at shape 1 reduces to
// exp(-loss_c * loss_b).
double k0_constant(const ChannelParams& params);

ChannelState make_channel_state(const ChannelParams& params);

// One uniform draw on [0, delta_ip_max].
double sample_delta_ip(RandomStream& rng, const ChannelParams& params);

// RTT(t) = 0.75 RTT(t-1) + 0.25 delta.
double step_rtt(double prev_rtt, double delta_ip);

// Advances the shadowing driver by the clamped AR(1) rule with uniform
// innovations on [-sqrt(3), sqrt(3)]; keeps z consistent with x.
ChannelState step_shadowing(const ChannelState& state, RandomStream& rng,
                            const ChannelParams& params);

// k0 * sqrt(z) / rtt. Requires at least one completed slot.
double sigma(const ChannelState& state);

// rate = sigma * sqrt(p).
double data_rate(double sigma_value, double p);

// One full slot: packet-delay draw, RTT smoothing, shadowing step. Consumes
// exactly two stream draws, delay first.
ChannelState advance_slot(const ChannelState& state, RandomStream& rng,
                          const ChannelParams& params);

}  // namespace fedalloc
