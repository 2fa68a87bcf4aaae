#include "fedalloc/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fedalloc/errors.hpp"

namespace fedalloc {

namespace {

double poly(double c3, double c2, double c0, double x) {
    return (c3 * x + c2) * x * x - c0;
}

// A-priori bracket for the positive root: both terms are positive at the
// root, so x <= sqrt(c0/c2) and x <= cbrt(c0/c3); at half that bound the
// polynomial is still below c0. Hence root in (m/2, m].
double upper_bound(double c3, double c2, double c0) {
    double m = std::numeric_limits<double>::infinity();
    if (c2 > 0.0) m = std::sqrt(c0 / c2);
    if (c3 > 0.0) m = std::min(m, std::cbrt(c0 / c3));
    return m;
}

// Newton iteration guarded by the bracket; converges from any start inside.
double polish(double c3, double c2, double c0, double x, double lo, double hi) {
    x = std::clamp(x, lo, hi);
    for (int i = 0; i < 60; ++i) {
        double v = poly(c3, c2, c0, x);
        if (v > 0.0)
            hi = x;
        else if (v < 0.0)
            lo = x;
        else
            return x;
        double d = (3.0 * c3 * x + 2.0 * c2) * x;
        double next = d > 0.0 ? x - v / d : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-16 * x) return next;
        x = next;
    }
    return x;
}

void check_cubic_args(double c3, double c2, double c0) {
    if (c3 < 0.0 || c2 < 0.0 || !(c0 > 0.0) || !(c3 + c2 > 0.0))
        throw invalid_parameter("cubic: need c3, c2 >= 0, c0 > 0, c3 + c2 > 0");
}

}  // namespace

double cubic_root_analytic(double c3, double c2, double c0) {
    check_cubic_args(c3, c2, c0);
    if (c3 == 0.0) return std::sqrt(c0 / c2);
    if (c2 == 0.0) return std::cbrt(c0 / c3);

    // Depressed form: x = y - P/3 turns x^3 + P x^2 - Q into y^3 + p y + q.
    double P = c2 / c3;
    double Q = c0 / c3;
    double p = -P * P / 3.0;
    double q = 2.0 * P * P * P / 27.0 - Q;
    double disc = 0.25 * q * q + p * p * p / 27.0;

    double y;
    if (disc > 0.0) {
        double s = std::sqrt(disc);
        y = std::cbrt(-0.5 * q + s) + std::cbrt(-0.5 * q - s);
    } else if (disc == 0.0) {
        // Repeated roots; candidates are the simple root 3q/p and the
        // double root -3q/(2p). The positive root is the larger.
        y = std::max(3.0 * q / p, -1.5 * q / p);
    } else {
        // Three real roots; the positive one is the largest (k = 0 branch).
        double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        y = m * std::cos(std::acos(arg) / 3.0);
    }
    // The subtraction cancels when the quadratic term dominates; the bracket
    // plus guarded Newton recovers full precision in that regime.
    double hi = upper_bound(c3, c2, c0);
    return polish(c3, c2, c0, y - P / 3.0, 0.5 * hi, hi);
}

double cubic_root_bisect(double c3, double c2, double c0) {
    check_cubic_args(c3, c2, c0);
    double hi = upper_bound(c3, c2, c0);
    double lo = 0.5 * hi;
    if (poly(c3, c2, c0, hi) < 0.0) return hi;  // only via rounding at the bound
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        if (poly(c3, c2, c0, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Derivative of a/x + b x^(zeta-1) + mu x; strictly increasing in x.
double power_cost_derivative(double a, double b, double mu, double zeta, double x) {
    return -a / (x * x) + (zeta - 1.0) * b * std::pow(x, zeta - 2.0) + mu;
}

// Same bracketing idea for general zeta: stationarity reads
// (zeta-1) b x^zeta + mu x^2 = a.
double derivative_bisect(double a, double b, double mu, double zeta) {
    double m = std::numeric_limits<double>::infinity();
    if (b > 0.0) m = std::pow(a / ((zeta - 1.0) * b), 1.0 / zeta);
    if (mu > 0.0) m = std::min(m, std::sqrt(a / mu));
    if (!std::isfinite(m)) throw numerical_bracket("power cost: unbounded descent direction");
    double lo = 0.5 * m;
    double hi = m;
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        if (power_cost_derivative(a, b, mu, zeta, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double power_cost_minimizer(double a, double b, double mu, double zeta, double x_floor,
                            double x_cap) {
    if (a < 0.0 || b < 0.0 || mu < 0.0)
        throw invalid_parameter("power cost: coefficients must be nonnegative");
    if (!(x_floor > 0.0) || !(x_cap >= x_floor))
        throw invalid_parameter("power cost: need 0 < x_floor <= x_cap");
    if (a == 0.0) return x_floor;             // derivative >= 0 everywhere
    if (b == 0.0 && mu == 0.0) return x_cap;  // pure 1/x decay
    double root;
    if (zeta == 3.0)
        root = cubic_root_analytic(2.0 * b, mu, a);
    else if (zeta == 2.0)
        root = std::sqrt(a / (b + mu));
    else
        root = derivative_bisect(a, b, mu, zeta);
    return std::clamp(root, x_floor, x_cap);
}

}  // namespace fedalloc
