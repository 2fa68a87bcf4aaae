#pragma once

#include <stdexcept>
#include <string>

namespace fedalloc {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class invalid_parameter : public error {
public:
    using error::error;
};

// sigma was requested before the first RTT update (slot 0).
class channel_not_warmed : public error {
public:
    using error::error;
};

// Every cost coefficient of a per-device Lagrangian vanished; the minimizer
// is undefined and the caller must perturb the multipliers.
class degenerate_objective : public error {
public:
    using error::error;
};

class numerical_bracket : public error {
public:
    using error::error;
};

// An objective returned a non-finite value during a search.
class objective_evaluation_error : public error {
public:
    objective_evaluation_error(const std::string& what, double theta_arg)
        : error(what), theta(theta_arg) {}
    double theta;
};

class oracle_too_large : public error {
public:
    using error::error;
};

class infeasible_error : public error {
public:
    using error::error;
};

}  // namespace fedalloc
