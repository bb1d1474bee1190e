#pragma once

#include <stdexcept>
#include <string>

namespace dwtrap {

// Invalid physical or structural parameters (bad well index, eta out of
// range, mismatched bases, ...). The CLI maps these to exit code 2.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to reach its tolerance (quadrature that will
// not converge, step-size underflow in the integrator, ...). Messages carry
// the achieved tolerance so the caller can decide what to do. Exit code 3.
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& what, double achieved, double requested)
        : std::runtime_error(what + " (achieved " + std::to_string(achieved) +
                             ", requested " + std::to_string(requested) + ")"),
          achieved_tolerance(achieved),
          requested_tolerance(requested) {}
    explicit numerical_error(const std::string& what)
        : std::runtime_error(what), achieved_tolerance(0), requested_tolerance(0) {}

    double achieved_tolerance;
    double requested_tolerance;
};

// Malformed or contradictory run configuration. Exit code 2.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dwtrap
