#pragma once

#include <stdexcept>
#include <string>

namespace panelval {

// Input-side failures: malformed files, bad records, invalid configuration.
// CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Computation-side failures: degenerate statistics, solver breakdowns,
// contract violations between panels. CLI maps these to exit code 3.
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace panelval
