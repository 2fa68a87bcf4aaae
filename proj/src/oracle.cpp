#include "fedalloc/oracle.hpp"

#include <limits>
#include <string>

#include "fedalloc/errors.hpp"

namespace fedalloc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void AxisSpec::validate() const {
    if (!(lo < hi)) throw invalid_parameter("grid axis: need lo < hi");
    if (points < 2) throw invalid_parameter("grid axis: need at least 2 points");
}

PfGridResult grid_search_pf(const DeviceProfile& dev, const DeviceDuals& duals, double theta,
                            const AccuracyConfig& acc, const AxisSpec& p_axis,
                            const AxisSpec& f_axis) {
    p_axis.validate();
    f_axis.validate();
    PfGridResult best;
    best.value = kInf;
    for (int i = 0; i < p_axis.points; ++i) {
        double p = p_axis.at(i);
        for (int j = 0; j < f_axis.points; ++j) {
            double f = f_axis.at(j);
            double v = lagrangian_value(dev, 1, p, f, /*xi=*/0.0, duals, theta, acc);
            if (v < best.value) {
                best = PfGridResult{p, f, v};
            }
        }
    }
    return best;
}

ThetaGridResult grid_search_theta(const std::vector<DeviceProfile>& devices,
                                  const std::vector<double>& p, const std::vector<double>& f,
                                  const AxisSpec& theta_axis, const HarmonyParams& params,
                                  const AccuracyConfig& acc) {
    theta_axis.validate();
    ThetaGridResult best;
    best.value = kInf;
    for (int i = 0; i < theta_axis.points; ++i) {
        double theta = theta_axis.at(i);
        double v = penalized_objective(theta, devices, p, f, params, acc);
        if (v < best.value) {
            best = ThetaGridResult{theta, v};
        }
    }
    return best;
}

FullGridResult grid_search_full(const std::vector<DeviceProfile>& devices, const GridSpec& spec,
                                const AccuracyConfig& acc) {
    if (devices.empty()) throw invalid_parameter("grid_search_full: empty device list");
    if (devices.size() > 3)
        throw oracle_too_large("grid_search_full: limited to 3 devices, got " +
                               std::to_string(devices.size()));
    spec.p.validate();
    spec.f.validate();
    spec.theta.validate();

    std::size_t n = devices.size();
    FullGridResult best;
    best.value = kInf;

    // Per-theta, per-device best feasible (p, f) scan. The devices' decision
    // variables are disjoint, so the joint feasible minimum of the worst-case
    // cost decomposes device by device for each theta; this keeps the scan
    // exhaustive over the grid while avoiding the points^(2N) odometer.
    std::vector<double> p_best(n), f_best(n);
    for (int ti = 0; ti < spec.theta.points; ++ti) {
        double theta = spec.theta.at(ti);
        if (!(theta > 0.0 && theta < 1.0)) continue;
        bool all_feasible = true;
        double worst = 0.0;
        for (std::size_t d = 0; d < n && all_feasible; ++d) {
            double dev_best = kInf;
            for (int i = 0; i < spec.p.points; ++i) {
                double p = spec.p.at(i);
                for (int j = 0; j < spec.f.points; ++j) {
                    double f = spec.f.at(j);
                    FeasibilityResiduals r = feasibility_residuals(devices[d], p, f, theta);
                    if (r.latency > 0.0 || r.energy > 0.0 || r.frequency > 0.0) continue;
                    double c = total_cost(devices[d], p, f, theta, acc).total;
                    if (c < dev_best) {
                        dev_best = c;
                        p_best[d] = p;
                        f_best[d] = f;
                    }
                }
            }
            if (dev_best == kInf) {
                all_feasible = false;
            } else {
                worst = std::max(worst, dev_best);
            }
        }
        if (all_feasible && worst < best.value) {
            best.value = worst;
            best.allocation.p = p_best;
            best.allocation.f = f_best;
            best.allocation.theta = theta;
        }
    }

    if (best.value == kInf)
        throw infeasible_error("grid_search_full: no feasible grid point");
    return best;
}

}  // namespace fedalloc
