#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aoi {

// Values on the equally spaced nodes t0, t0 + h, ..., t0 + n*h with linear
// interpolation in between. Evaluation outside [t0, t0 + n*h] throws DomainError.
class GridFunction {
public:
    GridFunction(double t0, double step, std::vector<double> values);

    double t0() const noexcept { return t0_; }
    double step() const noexcept { return step_; }
    double t_end() const noexcept { return t0_ + step_ * static_cast<double>(intervals()); }
    std::size_t intervals() const noexcept { return values_.size() - 1; }
    double node(std::size_t i) const noexcept { return t0_ + step_ * static_cast<double>(i); }

    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_.at(i); }

    bool contains(double t) const noexcept;
    double operator()(double t) const;

    // Exact integral of the piecewise-linear interpolant over [a, b].
    double integral(double a, double b) const;

private:
    double t0_;
    double step_;
    std::vector<double> values_;
    std::vector<double> cumulative_;  // trapezoid integral from t0 to each node
};

}  // namespace aoi
