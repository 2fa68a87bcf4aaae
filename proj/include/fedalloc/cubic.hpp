#pragma once

namespace fedalloc {

// Unique positive root of c3 x^3 + c2 x^2 - c0 = 0 with c3, c2 >= 0, c0 > 0
// and c3 + c2 > 0. The polynomial is strictly increasing on x > 0 and
// negative at 0, so exactly one positive root exists. Dispatches on the
// cubic discriminant (one-real-root Cardano, repeated-root boundary,
// three-real-root trigonometric form) and polishes with Newton steps.
double cubic_root_analytic(double c3, double c2, double c0);

// Same root by safeguarded bracketing and bisection; kept as an independent
// route for cross-checking the closed form.
double cubic_root_bisect(double c3, double c2, double c0);

// Minimizer of g(x) = a/x + b x^(zeta-1) + mu x over [x_floor, x_cap], with
// a, b, mu >= 0 and zeta >= 2. Stationarity is the increasing equation
// (zeta-1) b x^zeta + mu x^2 = a; zeta = 3 reduces to the cubic above,
// zeta = 2 to a square root, anything else is solved by bracketed bisection
// on the derivative.
double power_cost_minimizer(double a, double b, double mu, double zeta, double x_floor,
                            double x_cap);

}  // namespace fedalloc
