#include "fedalloc/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fedalloc/cubic.hpp"

namespace fedalloc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Coefficients of the f-dependent Lagrangian terms a/f + b f^(zeta-1) + mu f.
// rounds = epsilon_factor / (1 - theta) keeps the phi terms consistent with
// the round-scaled total cost.
struct FreqCoeffs {
    double a, b;
};

FreqCoeffs freq_coeffs(const DeviceProfile& dev, const DeviceDuals& duals, double theta,
                       const AccuracyConfig& acc) {
    double rounds = round_count(theta, acc);
    double work = std::log(1.0 / theta) * dev.gigacycles();
    return {(duals.phi * dev.w_time * rounds + duals.lam) * work,
            duals.phi * dev.w_energy * rounds * dev.rho * work};
}

// Coefficients of the s = sqrt(p) terms a/s + b s (+ beta s^2).
struct PowerCoeffs {
    double a, b;
};

PowerCoeffs power_coeffs(const DeviceProfile& dev, const DeviceDuals& duals, double theta,
                         const AccuracyConfig& acc) {
    double rounds = round_count(theta, acc);
    double unit = dev.c_payload / dev.sigma;
    return {(duals.phi * dev.w_time * rounds + duals.lam) * unit,
            duals.phi * dev.w_energy * rounds * unit};
}

void check_nonnegative(const DeviceDuals& d) {
    if (d.lam < 0.0 || d.beta < 0.0 || d.mu < 0.0 || d.phi < 0.0)
        throw invalid_parameter("duals must be nonnegative");
}

}  // namespace

DualState DualState::zeros(std::size_t n, double step_scale_arg) {
    DualState s;
    s.lam.assign(n, 0.0);
    s.beta.assign(n, 0.0);
    s.mu.assign(n, 0.0);
    s.phi.assign(n, 0.0);
    s.step_scale = step_scale_arg;
    return s;
}

DeviceDuals DualState::at(std::size_t n) const {
    return DeviceDuals{lam[n], beta[n], mu[n], phi[n]};
}

double lagrangian_value(const DeviceProfile& dev, std::size_t n_devices, double p, double f,
                        double xi, const DeviceDuals& duals, double theta,
                        const AccuracyConfig& acc) {
    if (!(p > 0.0) || !(f > 0.0))
        throw invalid_parameter("lagrangian_value: p and f must be > 0");
    check_nonnegative(duals);
    DeviceCost c = total_cost(dev, p, f, theta, acc);
    return xi / static_cast<double>(n_devices) + duals.phi * (c.total - xi) +
           duals.lam * (c.t_cmp + c.t_up - dev.t_max) + duals.beta * (p - dev.p_cap()) +
           duals.mu * (f - dev.f_max);
}

double solve_f(const DeviceProfile& dev, const DeviceDuals& duals, double theta,
               const AccuracyConfig& acc) {
    check_nonnegative(duals);
    FreqCoeffs c = freq_coeffs(dev, duals, theta, acc);
    if (c.a == 0.0 && c.b == 0.0)
        throw degenerate_objective("solve_f: all cost coefficients vanished");
    return power_cost_minimizer(c.a, c.b, duals.mu, dev.zeta, kFreqFloorGhz, dev.f_max);
}

double solve_p(const DeviceProfile& dev, const DeviceDuals& duals, double theta,
               const AccuracyConfig& acc) {
    check_nonnegative(duals);
    PowerCoeffs c = power_coeffs(dev, duals, theta, acc);
    if (c.a == 0.0 && c.b == 0.0)
        throw degenerate_objective("solve_p: all cost coefficients vanished");
    double s_cap = dev.e_up_max * dev.sigma / dev.c_payload;
    double s_floor = std::sqrt(kPowerFloorW);
    // a/s + b s + beta s^2 has the same shape as the zeta = 3 frequency
    // objective with (b, mu) |-> (beta, b).
    double s = power_cost_minimizer(c.a, duals.beta, c.b, 3.0, s_floor, s_cap);
    return s * s;
}

std::size_t argmax_total_cost(const std::vector<DeviceProfile>& devices,
                              const std::vector<double>& p, const std::vector<double>& f,
                              double theta, const AccuracyConfig& acc) {
    if (devices.empty() || devices.size() != p.size() || devices.size() != f.size())
        throw invalid_parameter("argmax_total_cost: size mismatch");
    std::size_t best = 0;
    double best_cost = -kInf;
    for (std::size_t n = 0; n < devices.size(); ++n) {
        double c = total_cost(devices[n], p[n], f[n], theta, acc).total;
        if (c > best_cost) {
            best_cost = c;
            best = n;
        }
    }
    return best;
}

double xi_from_primal(const std::vector<DeviceProfile>& devices, const std::vector<double>& p,
                      const std::vector<double>& f, double theta, const AccuracyConfig& acc) {
    std::size_t n = argmax_total_cost(devices, p, f, theta, acc);
    return total_cost(devices[n], p[n], f[n], theta, acc).total;
}

Subgradients subgradients(const std::vector<DeviceProfile>& devices, const std::vector<double>& p,
                          const std::vector<double>& f, double xi, double theta,
                          const AccuracyConfig& acc) {
    Subgradients g;
    std::size_t n = devices.size();
    g.g_lam.resize(n);
    g.g_beta.resize(n);
    g.g_mu.resize(n);
    g.g_phi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        DeviceCost c = total_cost(devices[i], p[i], f[i], theta, acc);
        g.g_lam[i] = c.t_cmp + c.t_up - devices[i].t_max;
        g.g_beta[i] = p[i] - devices[i].p_cap();
        g.g_mu[i] = f[i] - devices[i].f_max;
        g.g_phi[i] = c.total - xi;
    }
    return g;
}

DualState update_duals(const DualState& duals, const Subgradients& g) {
    if (!(duals.step_scale > 0.0))
        throw invalid_parameter("update_duals: step_scale must be > 0");
    std::size_t n = duals.size();
    if (g.g_lam.size() != n || g.g_beta.size() != n || g.g_mu.size() != n || g.g_phi.size() != n)
        throw invalid_parameter("update_duals: size mismatch");
    double step = duals.step_scale / std::sqrt(static_cast<double>(duals.step_iter) + 1.0);
    step = std::min(step, 1.0 - 1e-12);
    DualState next = duals;
    for (std::size_t i = 0; i < n; ++i) {
        next.lam[i] = std::max(0.0, duals.lam[i] + step * g.g_lam[i]);
        next.beta[i] = std::max(0.0, duals.beta[i] + step * g.g_beta[i]);
        next.mu[i] = std::max(0.0, duals.mu[i] + step * g.g_mu[i]);
        next.phi[i] = std::max(0.0, duals.phi[i] + step * g.g_phi[i]);
    }
    next.step_iter = duals.step_iter + 1;
    return next;
}

double dual_value(const std::vector<DeviceProfile>& devices, const DualState& duals, double theta,
                  const AccuracyConfig& acc) {
    double phi_sum = 0.0;
    for (double v : duals.phi) phi_sum += v;
    if (!(phi_sum > 0.0)) return -kInf;
    double value = 0.0;
    for (std::size_t i = 0; i < devices.size(); ++i) {
        DeviceDuals d = duals.at(i);
        d.phi /= phi_sum;
        if (d.phi == 0.0 && d.lam == 0.0) {
            // No cost terms left; the infimum sits at the domain floor.
            value += d.beta * (kPowerFloorW - devices[i].p_cap()) +
                     d.mu * (kFreqFloorGhz - devices[i].f_max);
            continue;
        }
        double f = solve_f(devices[i], d, theta, acc);
        double p = solve_p(devices[i], d, theta, acc);
        value += lagrangian_value(devices[i], devices.size(), p, f, /*xi=*/0.0, d, theta, acc);
    }
    return value;
}

BlockSolution solve_block(const std::vector<DeviceProfile>& devices, double theta,
                          const DualState& duals0, const BlockOptions& opts,
                          const AccuracyConfig& acc, BlockDiagnostics* diag) {
    std::size_t n = devices.size();
    if (n == 0) throw invalid_parameter("solve_block: empty device list");
    if (duals0.size() != n) throw invalid_parameter("solve_block: duals size mismatch");
    if (!(theta > 0.0 && theta < 1.0))
        throw invalid_parameter("solve_block: theta must lie in (0, 1)");
    if (!(opts.tol > 0.0)) throw invalid_parameter("solve_block: tol must be > 0");

    DualState duals = duals0;
    BlockSolution best;
    best.xi = kInf;
    bool have_feasible = false;
    BlockSolution least;
    double least_violation = kInf;

    std::vector<double> p(n), f(n);
    long iterations = 0;
    bool converged = false;

    while (iterations < opts.max_iter) {
        ++iterations;
        DualState effective = duals;
        for (std::size_t i = 0; i < n; ++i) {
            // The max-cost residual g_phi is never positive, so phi can only
            // decay; a device priced at phi = 0 would otherwise ignore its
            // own cost (or degenerate outright when lam = 0 too). A shadow
            // unit weight turns its solve into the device's own constrained
            // cost minimization, which is exactly the per-device share of
            // the worst-case problem; the stored multiplier keeps the zero
            // that complementary slackness prescribes off the worst case.
            if (effective.phi[i] == 0.0) effective.phi[i] = 1.0;
            DeviceDuals d = effective.at(i);
            f[i] = solve_f(devices[i], d, theta, acc);
            p[i] = solve_p(devices[i], d, theta, acc);
        }
        double xi = xi_from_primal(devices, p, f, theta, acc);

        bool feasible = true;
        double violation = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            FeasibilityResiduals r = feasibility_residuals(devices[i], p[i], f[i], theta);
            feasible = feasible && within_budgets(devices[i], r, opts.feas_eps);
            violation = std::max({violation, r.latency / (1.0 + devices[i].t_max),
                                  r.energy / (1.0 + devices[i].e_up_max),
                                  r.frequency / (1.0 + devices[i].f_max)});
        }
        if (feasible) {
            if (!have_feasible || xi < best.xi) {
                best.p = p;
                best.f = f;
                best.xi = xi;
            }
            have_feasible = true;
        } else if (violation < least_violation) {
            least_violation = violation;
            least.p = p;
            least.f = f;
            least.xi = xi;
        }

        if (diag) {
            // The shadowed multipliers are themselves valid dual variables,
            // so the bound is evaluated there and stays informative when the
            // stored phi vector is zero.
            diag->dual_values.push_back(dual_value(devices, effective, theta, acc));
            diag->best_primal.push_back(have_feasible ? best.xi : kInf);
        }

        Subgradients g = subgradients(devices, p, f, xi, theta, acc);
        DualState next = update_duals(duals, g);
        double move = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            move = std::max({move, std::abs(next.lam[i] - duals.lam[i]),
                             std::abs(next.beta[i] - duals.beta[i]),
                             std::abs(next.mu[i] - duals.mu[i]),
                             std::abs(next.phi[i] - duals.phi[i])});
        }
        duals = next;
        // When the iterates approach a binding constraint from the
        // infeasible side, multiplier movement settles before any iterate
        // clears feas_eps; conclude only once a feasible incumbent exists.
        if (move < opts.tol && have_feasible) {
            converged = true;
            break;
        }
    }

    if (!have_feasible) {
        least.duals = duals;
        least.iterations = iterations;
        throw infeasible_block("solve_block: no feasible point within max_iter", least);
    }
    best.duals = duals;
    best.iterations = iterations;
    best.converged = converged;
    return best;
}

}  // namespace fedalloc
