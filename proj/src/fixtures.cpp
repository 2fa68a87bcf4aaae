#include "fedalloc/fixtures.hpp"

#include <cmath>

#include "fedalloc/errors.hpp"

namespace fedalloc {

PfFixture sample_pf_fixture(RandomStream& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        PfFixture fx;
        fx.theta = rng.uniform(0.05, 0.95);

        DeviceProfile& dev = fx.dev;
        dev.b_cycles = 40.0;
        dev.d_size = rng.uniform(0.1, 0.5) * 1e9 / dev.b_cycles;  // 0.1..0.5 gigacycles
        dev.c_payload = 4500.0;
        dev.sigma = rng.uniform(1500.0, 3000.0);
        dev.rho = rng.uniform(0.05, 0.5);
        double zeta_pick = rng.uniform01();
        dev.zeta = zeta_pick < 0.7 ? 3.0 : (zeta_pick < 0.8 ? 2.0 : (zeta_pick < 0.9 ? 2.5 : 4.0));
        dev.f_max = 2.0;
        dev.t_max = rng.uniform(1.0, 6.0);
        dev.e_up_max = rng.uniform(15.0, 40.0);
        dev.w_time = rng.uniform(0.2, 0.8);
        dev.w_energy = 1.0 - dev.w_time;

        fx.duals.phi = rng.uniform(0.2, 2.0);
        fx.duals.lam = rng.uniform(0.0, 1.0);
        fx.duals.mu = rng.uniform(0.0, 0.5);
        fx.duals.beta = rng.uniform(0.0, 0.2);

        AccuracyConfig acc;
        acc.theta = fx.theta;
        double f_star = solve_f(dev, fx.duals, fx.theta, acc);
        double p_star = solve_p(dev, fx.duals, fx.theta, acc);
        if (f_star >= 0.05 && f_star <= 1.9 && p_star >= 0.05 && p_star <= 3.5) return fx;
    }
    throw error("sample_pf_fixture: rejection budget exhausted");
}

DeviceProfile sample_device(RandomStream& rng, bool wide_budgets) {
    DeviceProfile dev;
    dev.d_size = rng.uniform(5e6, 10e6);
    dev.b_cycles = 40.0;
    dev.c_payload = 4500.0;
    dev.sigma = rng.uniform(1600.0, 2800.0);
    dev.rho = 0.05;
    dev.zeta = 3.0;
    dev.f_max = 2.0;
    dev.w_time = 0.5;
    dev.w_energy = 0.5;
    if (wide_budgets) {
        dev.t_max = 12.0;
        dev.e_up_max = 40.0;
    } else {
        // Leave some latency headroom at the accuracy midpoint: the
        // alternation cannot lower a shared accuracy past a budget that
        // already binds there, because the block solution then sits on the
        // latency boundary and every smaller theta is penalty-walled. The
        // budget still tightens as the accuracy descends.
        double upload = dev.c_payload / dev.sigma;  // upload time at 1 W
        double compute = std::log(2.0) * dev.gigacycles() / dev.f_max;
        dev.t_max = upload + compute + rng.uniform(0.2, 0.8);
        dev.e_up_max = 20.0;
    }
    return dev;
}

std::vector<DeviceProfile> sample_scenario(RandomStream& rng, int n, bool wide_budgets) {
    std::vector<DeviceProfile> devices;
    devices.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) devices.push_back(sample_device(rng, wide_budgets));
    return devices;
}

}  // namespace fedalloc
