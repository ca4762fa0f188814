#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "aoi/laplace.hpp"
#include "aoi/rate_profile.hpp"
#include "aoi/service_distribution.hpp"
#include "aoi/tv_solver.hpp"

namespace aoi {

// Requirement i: P(age(t) <= thresholds[i]) >= probabilities[i] for t in [times[i], times[i+1]).
struct ConstraintSchedule {
    std::vector<double> times;
    std::vector<double> thresholds;
    std::vector<double> probabilities;

    std::size_t size() const noexcept { return thresholds.size(); }
    void validate() const;
    // Index of the requirement interval containing t.
    std::size_t interval_of(double t) const;
};

struct PiecewiseRatePlan {
    std::vector<double> breakpoints;  // K + 1 points
    std::vector<double> rates;        // K rates
    double cost = 0.0;

    static PiecewiseRatePlan make(std::vector<double> breakpoints, std::vector<double> rates);
    RateProfile profile() const;
};

struct RateRequirement {
    double x;
    double p;
};

struct OptimizerSettings {
    std::vector<double> rate_grid = default_rate_grid();
    double epsilon = 0.01;
    int ite_max = 30;
    double eta_spacing = 0.5;
    std::vector<double> eta;  // explicit evaluation nodes; empty means eta_spacing over the horizon
    SolverSettings solver;
    InversionSettings inversion;

    static std::vector<double> default_rate_grid();
    void validate() const;
};

struct Violation {
    double eta;
    std::size_t requirement;
    double phi;
    double target;
};

struct OptimizationResult {
    bool feasible = false;
    double theta = 0.0;
    PiecewiseRatePlan plan;
    std::vector<double> targets;  // refined probabilities used by the last stationary search
    int iterations = 0;
    std::vector<Violation> violations;  // from the last evaluation
};

// 1 when restarting service loses nothing (memoryless or decreasing failure rate), else 0.
double choose_theta(const ServiceDistribution& service);

std::vector<double> split_windows(const ConstraintSchedule& schedule);

std::vector<double> evaluation_nodes(const ConstraintSchedule& schedule, const OptimizerSettings& settings);

// Smallest grid rate whose stationary age CDF meets every requirement.
std::optional<double> stationary_rate_search(const ServiceDistribution& service, double theta,
                                             std::span<const RateRequirement> active,
                                             const OptimizerSettings& settings);

OptimizationResult optimize_rates(const ServiceDistribution& service, const ConstraintSchedule& schedule,
                                  const OptimizerSettings& settings = {});

OptimizationResult benchmark_constant_rate(const ServiceDistribution& service, const ConstraintSchedule& schedule,
                                           const OptimizerSettings& settings = {});

// Fresh time-varying evaluation of a plan at every evaluation node.
std::vector<Violation> audit_plan(const ServiceDistribution& service, double theta, const ConstraintSchedule& schedule,
                                  const PiecewiseRatePlan& plan, const OptimizerSettings& settings = {});

}  // namespace aoi
