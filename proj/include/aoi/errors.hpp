#pragma once

#include <stdexcept>
#include <string>

namespace aoi {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

// Invalid parameters, malformed config files, inconsistent schedules.
class ConfigError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "config"; }
};

// Argument outside the domain of a function (t < y, outside a grid, ...).
class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "domain"; }
};

// The operation is not defined for this input, e.g. a density of a
// deterministic service time.
class UnsupportedOperation : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "unsupported"; }
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual, int iterations);
    const char* kind() const noexcept override { return "convergence"; }
    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

class InversionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "inversion"; }
};

}  // namespace aoi
