#pragma once

#include <cstddef>
#include <vector>

namespace fedalloc {

// Per-device constants. Cycle counts are carried in gigacycles and CPU
// frequencies in GHz so that compute latency comes out in seconds and the
// rho = 0.05, zeta = 3 power preset yields sub-joule compute energies.
struct DeviceProfile {
    double d_size = 7.5e6;     // dataset size, bytes
    double b_cycles = 40.0;    // CPU cycles per byte
    double c_payload = 4500.0; // upload payload, bytes
    double rho = 0.05;         // J per gigacycle per GHz^(zeta-1)
    double zeta = 3.0;         // power exponent, >= 2
    double f_max = 2.0;        // GHz
    double t_max = 4.0;        // per-round latency budget, s
    double e_up_max = 20.0;    // per-round upload energy budget, J
    double w_time = 0.5;       // latency weight
    double w_energy = 0.5;     // energy weight; w_time + w_energy = 1
    double sigma = 2000.0;     // connection coefficient, bytes/s per sqrt(W)

    double gigacycles() const { return d_size * b_cycles * 1e-9; }

    // Upload-energy budget rewritten as a transmit-power cap.
    double p_cap() const {
        double s = e_up_max * sigma / c_payload;
        return s * s;
    }

    void validate() const;
};

struct AccuracyConfig {
    double theta = 0.5;          // local accuracy, (0, 1)
    double theta_lo = 1e-4;      // search bounds; endpoints of (0,1) are singular
    double theta_hi = 0.999;
    double epsilon_factor = 1.0; // constant multiplier on the round count

    void validate() const;
};

// One full decision point: per-device transmit powers and CPU frequencies
// plus the shared local accuracy.
struct Allocation {
    std::vector<double> p;  // W
    std::vector<double> f;  // GHz
    double theta = 0.5;
};

struct DeviceCost {
    double t_cmp = 0.0;  // s
    double t_up = 0.0;   // s
    double e_cmp = 0.0;  // J
    double e_up = 0.0;   // J
    double per_round = 0.0;  // weighted one-round cost
    double total = 0.0;      // round-count-scaled cost
};

struct CostReport {
    std::vector<DeviceCost> per_device;
    double worst_cost = 0.0;
    std::size_t worst_index = 0;  // lowest index among ties
};

// Signed constraint residuals; a point is feasible iff all are <= 0.
struct FeasibilityResiduals {
    double latency = 0.0;    // t_cmp + t_up - t_max
    double energy = 0.0;     // e_up - e_up_max
    double frequency = 0.0;  // f - f_max
};

double t_cmp(const DeviceProfile& dev, double f, double theta);
double e_cmp(const DeviceProfile& dev, double f, double theta);
double t_up(const DeviceProfile& dev, double p);
double e_up(const DeviceProfile& dev, double p);

// epsilon_factor / (1 - theta), the number of global rounds to target accuracy.
double round_count(double theta, const AccuracyConfig& cfg);

DeviceCost total_cost(const DeviceProfile& dev, double p, double f, double theta,
                      const AccuracyConfig& cfg);

FeasibilityResiduals feasibility_residuals(const DeviceProfile& dev, double p, double f,
                                           double theta);

// True iff every residual is within eps * (1 + budget) slack.
bool within_budgets(const DeviceProfile& dev, const FeasibilityResiduals& r, double eps);

CostReport cost_report(const std::vector<DeviceProfile>& devices, const Allocation& alloc,
                       const AccuracyConfig& cfg);

}  // namespace fedalloc
