#include <doctest.h>

#include <cmath>

#include "fedalloc/channel.hpp"
#include "fedalloc/errors.hpp"

using namespace fedalloc;

namespace {
constexpr double kSqrt3 = 1.7320508075688772;
}

TEST_CASE("k0 constant matches direct high-precision evaluation") {
    ChannelParams params;  // A = 90.2514, B = 3.4998, C = 1.0942, b = 2, MSS = 1460
    CHECK(k0_constant(params) == doctest::Approx(1135.24805950170524).epsilon(1e-12));
}

TEST_CASE("k0 collapses to sqrt(3/4) MSS when the FEC term vanishes") {
    ChannelParams params;
    params.mss = 1.0;
    params.loss_a = 1e-300;
    params.loss_c = 1.0;
    CHECK(k0_constant(params) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
}

TEST_CASE("k0 is linear in the segment size") {
    ChannelParams params;
    double base = k0_constant(params);
    params.mss *= 2.0;
    CHECK(k0_constant(params) == doctest::Approx(2.0 * base).epsilon(1e-14));
}

TEST_CASE("k0 rejects non-positive parameters") {
    ChannelParams params;
    params.loss_b = 0.0;
    CHECK_THROWS_AS(k0_constant(params), invalid_parameter);
    params = ChannelParams{};
    params.mss = -1.0;
    CHECK_THROWS_AS(k0_constant(params), invalid_parameter);
}

TEST_CASE("packet delay draws stay inside the configured support") {
    ChannelParams params;
    params.delta_ip_max = 0.2;
    RandomStream rng(7);
    for (int i = 0; i < 1000; ++i) {
        double d = sample_delta_ip(rng, params);
        CHECK(d >= 0.0);
        CHECK(d <= 0.2);
    }
}

TEST_CASE("packet delay draws are reproducible and consume one draw") {
    ChannelParams params;
    RandomStream a(123), b(123);
    CHECK(sample_delta_ip(a, params) == sample_delta_ip(b, params));
    // Both streams must still be aligned afterwards.
    CHECK(a.uniform01() == b.uniform01());
}

TEST_CASE("RTT smoothing recursion") {
    CHECK(step_rtt(0.0, 0.4) == doctest::Approx(0.1));
    CHECK(step_rtt(0.1, 0.1) == doctest::Approx(0.1));
    CHECK(step_rtt(0.2, 0.0) == doctest::Approx(0.15));
    CHECK_THROWS_AS(step_rtt(-0.1, 0.1), invalid_parameter);
    CHECK_THROWS_AS(step_rtt(0.1, -0.1), invalid_parameter);
}

TEST_CASE("RTT stays inside the delay support") {
    ChannelParams params;
    params.delta_ip_max = 0.3;
    RandomStream rng(99);
    double rtt = 0.0;
    for (int t = 0; t < 1000; ++t) {
        rtt = step_rtt(rtt, sample_delta_ip(rng, params));
        CHECK(rtt >= 0.0);
        CHECK(rtt <= 0.3);
    }
}

TEST_CASE("RTT converges geometrically under a constant delay") {
    double target = 0.25;
    double rtt = 0.0;
    for (int t = 1; t <= 60; ++t) {
        rtt = step_rtt(rtt, target);
        CHECK(std::abs(rtt - target) <= std::pow(0.75, t) * target + 1e-15);
    }
}

TEST_CASE("shadowing driver stays bounded and keeps z consistent") {
    ChannelParams params;
    RandomStream rng(5);
    ChannelState state = make_channel_state(params);
    CHECK(state.z == doctest::Approx(params.a0));  // x = 0 initially
    for (int t = 0; t < 2000; ++t) {
        state = step_shadowing(state, rng, params);
        CHECK(state.x >= -kSqrt3);
        CHECK(state.x <= kSqrt3);
        CHECK(state.z == doctest::Approx(params.a0 * std::pow(10.0, 0.1 * state.x)));
    }
}

TEST_CASE("uncorrelated shadowing driver has the right moments") {
    ChannelParams params;
    params.x_corr = 0.0;
    RandomStream rng(2024);
    ChannelState state = make_channel_state(params);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int t = 0; t < n; ++t) {
        state = step_shadowing(state, rng, params);
        sum += state.x;
        sum2 += state.x * state.x;
    }
    double mean = sum / n;
    double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) <= 0.02);
    CHECK(std::abs(var - 1.0) <= 0.05);
}

TEST_CASE("shadowing gain at the clamp boundary") {
    // Push the driver against the upper clamp and check z there.
    ChannelParams params;
    params.x_corr = 0.999999;
    ChannelState state = make_channel_state(params);
    state.x = kSqrt3;
    RandomStream rng(31);
    bool hit = false;
    for (int t = 0; t < 200 && !hit; ++t) {
        state = step_shadowing(state, rng, params);
        if (state.x == kSqrt3) {
            CHECK(state.z == doctest::Approx(1.45102485271745791).epsilon(1e-12));
            hit = true;
        }
        state.x = kSqrt3;  // re-arm the boundary
    }
    CHECK(hit);
}

TEST_CASE("sigma from state fields") {
    ChannelState state;
    state.k0 = 100.0;
    state.z = 1.0;
    state.rtt = 0.1;
    state.t = 1;
    CHECK(sigma(state) == doctest::Approx(1000.0));
    state.rtt = 0.2;  // doubling RTT halves sigma
    CHECK(sigma(state) == doctest::Approx(500.0));
    state.rtt = 0.1;
    state.z = 4.0;  // quadrupling z doubles sigma
    CHECK(sigma(state) == doctest::Approx(2000.0));
}

TEST_CASE("sigma is undefined before the first slot") {
    ChannelParams params;
    ChannelState state = make_channel_state(params);
    CHECK_THROWS_AS(sigma(state), channel_not_warmed);
    state.t = 1;
    state.rtt = 0.0;
    CHECK_THROWS_AS(sigma(state), channel_not_warmed);
}

TEST_CASE("data rate follows the square-root law") {
    CHECK(data_rate(100.0, 4.0) == doctest::Approx(200.0));
    CHECK(data_rate(55.0, 0.0) == 0.0);
    RandomStream rng(8);
    for (int i = 0; i < 200; ++i) {
        double s = rng.uniform(10.0, 500.0);
        double p1 = rng.uniform(0.0, 5.0);
        double p2 = p1 + rng.uniform(0.01, 5.0);
        CHECK(data_rate(s, p2) > data_rate(s, p1));  // monotone
        double mid = 0.5 * (p1 + p2);
        CHECK(data_rate(s, mid) >=
              0.5 * (data_rate(s, p1) + data_rate(s, p2)) - 1e-12);  // concave
    }
}

TEST_CASE("channel trajectories are bitwise reproducible") {
    ChannelParams params;
    RandomStream a(42), b(42);
    ChannelState sa = make_channel_state(params);
    ChannelState sb = sa;
    for (int t = 0; t < 500; ++t) {
        sa = advance_slot(sa, a, params);
        sb = advance_slot(sb, b, params);
        CHECK(sa.rtt == sb.rtt);
        CHECK(sa.x == sb.x);
        CHECK(sa.z == sb.z);
        CHECK(sa.sigma == sb.sigma);
        CHECK(sigma(sa) > 0.0);
    }
}
