#pragma once

#include <stdexcept>
#include <string>

namespace dgs {

// Invalid input or violated precondition. The CLI maps these to exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-convergence, guard trips, indefinite systems.
// The CLI maps these to exit code 2.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Energy at or above the admissible range for an operation. No finite
// Harnack constant exists there; any nonnegative super-solution is zero.
class EnergyTooHigh : public NumericError {
public:
    explicit EnergyTooHigh(const std::string& what) : NumericError(what) {}
};

}  // namespace dgs
