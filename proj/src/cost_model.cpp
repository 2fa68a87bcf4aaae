#include "fedalloc/cost_model.hpp"

#include <cmath>
#include <limits>

#include "fedalloc/errors.hpp"

namespace fedalloc {

void DeviceProfile::validate() const {
    if (!(d_size > 0.0)) throw invalid_parameter("device: d_size must be > 0");
    if (!(b_cycles > 0.0)) throw invalid_parameter("device: b_cycles must be > 0");
    if (!(c_payload > 0.0)) throw invalid_parameter("device: c_payload must be > 0");
    if (!(rho > 0.0)) throw invalid_parameter("device: rho must be > 0");
    if (!(zeta >= 2.0)) throw invalid_parameter("device: zeta must be >= 2");
    if (!(f_max > 0.0)) throw invalid_parameter("device: f_max must be > 0");
    if (!(t_max > 0.0)) throw invalid_parameter("device: t_max must be > 0");
    if (!(e_up_max > 0.0)) throw invalid_parameter("device: e_up_max must be > 0");
    if (!(sigma > 0.0)) throw invalid_parameter("device: sigma must be > 0");
    if (!(w_time >= 0.0 && w_time <= 1.0) || !(w_energy >= 0.0 && w_energy <= 1.0))
        throw invalid_parameter("device: weights must lie in [0, 1]");
    if (std::abs(w_time + w_energy - 1.0) > 1e-12)
        throw invalid_parameter("device: w_time + w_energy must equal 1");
}

void AccuracyConfig::validate() const {
    if (!(theta_lo > 0.0 && theta_lo <= theta_hi && theta_hi < 1.0))
        throw invalid_parameter("accuracy: need 0 < theta_lo <= theta_hi < 1");
    if (!(theta >= theta_lo && theta <= theta_hi))
        throw invalid_parameter("accuracy: theta outside [theta_lo, theta_hi]");
    if (!(epsilon_factor > 0.0))
        throw invalid_parameter("accuracy: epsilon_factor must be > 0");
}

double t_cmp(const DeviceProfile& dev, double f, double theta) {
    if (!(f > 0.0)) throw invalid_parameter("t_cmp: f must be > 0");
    if (!(theta > 0.0 && theta < 1.0)) throw invalid_parameter("t_cmp: theta must lie in (0, 1)");
    return std::log(1.0 / theta) * dev.gigacycles() / f;
}

double e_cmp(const DeviceProfile& dev, double f, double theta) {
    if (!(f > 0.0)) throw invalid_parameter("e_cmp: f must be > 0");
    if (!(theta > 0.0 && theta < 1.0)) throw invalid_parameter("e_cmp: theta must lie in (0, 1)");
    return std::log(1.0 / theta) * dev.rho * dev.gigacycles() * std::pow(f, dev.zeta - 1.0);
}

double t_up(const DeviceProfile& dev, double p) {
    if (!(p > 0.0)) throw invalid_parameter("t_up: p must be > 0");
    return dev.c_payload / (dev.sigma * std::sqrt(p));
}

double e_up(const DeviceProfile& dev, double p) {
    if (p < 0.0) throw invalid_parameter("e_up: p must be nonnegative");
    return dev.c_payload * std::sqrt(p) / dev.sigma;
}

double round_count(double theta, const AccuracyConfig& cfg) {
    if (!(theta > 0.0 && theta < 1.0))
        throw invalid_parameter("round_count: theta must lie in (0, 1)");
    return cfg.epsilon_factor / (1.0 - theta);
}

DeviceCost total_cost(const DeviceProfile& dev, double p, double f, double theta,
                      const AccuracyConfig& cfg) {
    DeviceCost c;
    c.t_cmp = t_cmp(dev, f, theta);
    c.t_up = t_up(dev, p);
    c.e_cmp = e_cmp(dev, f, theta);
    c.e_up = e_up(dev, p);
    c.per_round = dev.w_energy * (c.e_cmp + c.e_up) + dev.w_time * (c.t_cmp + c.t_up);
    c.total = round_count(theta, cfg) * c.per_round;
    return c;
}

FeasibilityResiduals feasibility_residuals(const DeviceProfile& dev, double p, double f,
                                           double theta) {
    FeasibilityResiduals r;
    if (p > 0.0 && f > 0.0 && theta > 0.0 && theta < 1.0) {
        r.latency = t_cmp(dev, f, theta) + t_up(dev, p) - dev.t_max;
    } else {
        r.latency = std::numeric_limits<double>::infinity();
    }
    r.energy = (p >= 0.0 ? e_up(dev, p) : std::numeric_limits<double>::infinity()) - dev.e_up_max;
    r.frequency = f - dev.f_max;
    return r;
}

bool within_budgets(const DeviceProfile& dev, const FeasibilityResiduals& r, double eps) {
    return r.latency <= eps * (1.0 + dev.t_max) &&
           r.energy <= eps * (1.0 + dev.e_up_max) &&
           r.frequency <= eps * (1.0 + dev.f_max);
}

CostReport cost_report(const std::vector<DeviceProfile>& devices, const Allocation& alloc,
                       const AccuracyConfig& cfg) {
    if (devices.size() != alloc.p.size() || devices.size() != alloc.f.size())
        throw invalid_parameter("cost_report: allocation size mismatch");
    CostReport report;
    report.per_device.reserve(devices.size());
    for (std::size_t n = 0; n < devices.size(); ++n) {
        DeviceCost c = total_cost(devices[n], alloc.p[n], alloc.f[n], alloc.theta, cfg);
        if (report.per_device.empty() || c.total > report.worst_cost) {
            report.worst_cost = c.total;
            report.worst_index = n;
        }
        report.per_device.push_back(c);
    }
    return report;
}

}  // namespace fedalloc
