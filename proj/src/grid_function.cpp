#include "aoi/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aoi/errors.hpp"

namespace aoi {

namespace {

// Nodes are computed as t0 + i*h; allow for the rounding of that product at
// the far end of the grid.
constexpr double kEdgeSlack = 1e-10;

}  // namespace

GridFunction::GridFunction(double t0, double step, std::vector<double> values)
    : t0_(t0), step_(step), values_(std::move(values)) {
    if (!(step_ > 0.0) || !std::isfinite(step_))
        throw ConfigError("grid step must be positive");
    if (values_.size() < 2)
        throw ConfigError("grid function needs at least two nodes");
    cumulative_.resize(values_.size());
    cumulative_[0] = 0.0;
    for (std::size_t i = 1; i < values_.size(); ++i)
        cumulative_[i] = cumulative_[i - 1] + 0.5 * step_ * (values_[i - 1] + values_[i]);
}

bool GridFunction::contains(double t) const noexcept {
    const double slack = kEdgeSlack * std::max(1.0, std::abs(t_end()));
    return t >= t0_ - slack && t <= t_end() + slack;
}

double GridFunction::operator()(double t) const {
    if (!contains(t))
        throw DomainError("grid function evaluated at " + std::to_string(t) + " outside [" +
                          std::to_string(t0_) + ", " + std::to_string(t_end()) + "]");
    const double pos = std::clamp((t - t0_) / step_, 0.0, static_cast<double>(intervals()));
    const auto i = std::min(static_cast<std::size_t>(pos), intervals() - 1);
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * values_[i] + w * values_[i + 1];
}

double GridFunction::integral(double a, double b) const {
    if (a > b) return -integral(b, a);
    if (!contains(a) || !contains(b))
        throw DomainError("grid function integral outside the grid");
    // Integral from t0 to an arbitrary point of the linear interpolant.
    auto primitive = [this](double t) {
        const double pos = std::clamp((t - t0_) / step_, 0.0, static_cast<double>(intervals()));
        const auto i = std::min(static_cast<std::size_t>(pos), intervals() - 1);
        const double w = pos - static_cast<double>(i);
        const double vt = (1.0 - w) * values_[i] + w * values_[i + 1];
        return cumulative_[i] + 0.5 * w * step_ * (values_[i] + vt);
    };
    return primitive(b) - primitive(a);
}

}  // namespace aoi
