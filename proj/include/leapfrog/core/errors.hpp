#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace leapfrog {

/// Invalid configuration or mismatched dimensions.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A field left the admissible range during a step; almost always a CFL violation.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(std::int64_t step, const std::string& what)
        : std::runtime_error(what), step_(step)
    {
    }

    std::int64_t step() const noexcept { return step_; }

private:
    std::int64_t step_;
};

/// Power iteration for the time-step bound did not settle.
class EstimationError : public std::runtime_error {
public:
    EstimationError(double lower, double upper, const std::string& what)
        : std::runtime_error(what), lower_(lower), upper_(upper)
    {
    }

    /// Last two Rayleigh quotients seen before giving up.
    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    double lower_;
    double upper_;
};

/// Local flow-rule solver failure.
class ProcessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace leapfrog
