#include "aoi/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "aoi/errors.hpp"
#include "aoi/stationary.hpp"
#include "parallel.hpp"

namespace aoi {

void ConstraintSchedule::validate() const {
    const std::size_t n = thresholds.size();
    if (n == 0) throw ConfigError("schedule needs at least one requirement");
    if (times.size() != n + 1 || probabilities.size() != n)
        throw ConfigError("schedule needs n + 1 times, n thresholds and n probabilities");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i + 1] > times[i])) throw ConfigError("schedule times must increase strictly");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(thresholds[i] > 0.0)) throw ConfigError("schedule thresholds must be positive");
        if (!(probabilities[i] > 0.0 && probabilities[i] < 1.0))
            throw ConfigError("schedule probabilities must lie in (0, 1)");
    }
    // Each interval must leave room for a preparation window of the next threshold.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double width = times[i + 1] - times[i];
        if (!(thresholds[i + 1] < width))
            throw ConfigError("threshold " + std::to_string(i + 1) + " does not fit before time " +
                              std::to_string(times[i + 1]));
        if (!(thresholds[i] < width))
            throw ConfigError("threshold " + std::to_string(i) + " exceeds its interval");
    }
}

std::size_t ConstraintSchedule::interval_of(double t) const {
    if (t < times.front() || t > times.back()) throw DomainError("time outside the schedule horizon");
    if (t == times.back()) return size() - 1;  // the last interval is closed
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    return static_cast<std::size_t>(it - times.begin()) - 1;
}

PiecewiseRatePlan PiecewiseRatePlan::make(std::vector<double> breakpoints, std::vector<double> rates) {
    if (breakpoints.size() != rates.size() + 1 || rates.empty())
        throw ConfigError("plan needs one more breakpoint than rates");
    PiecewiseRatePlan plan{std::move(breakpoints), std::move(rates), 0.0};
    for (std::size_t k = 0; k < plan.rates.size(); ++k) {
        if (plan.rates[k] < 0.0) throw ConfigError("plan rates must be nonnegative");
        plan.cost += plan.rates[k] * (plan.breakpoints[k + 1] - plan.breakpoints[k]);
    }
    return plan;
}

RateProfile PiecewiseRatePlan::profile() const {
    return RateProfile::piecewise_constant({breakpoints.begin(), breakpoints.end() - 1}, rates);
}

std::vector<double> OptimizerSettings::default_rate_grid() {
    constexpr int kCount = 60;
    const double lo = std::log(0.05), hi = std::log(20.0);
    std::vector<double> grid(kCount);
    for (int i = 0; i < kCount; ++i) grid[i] = std::exp(lo + (hi - lo) * i / (kCount - 1));
    return grid;
}

void OptimizerSettings::validate() const {
    if (rate_grid.empty()) throw ConfigError("rate grid is empty");
    for (std::size_t i = 0; i < rate_grid.size(); ++i) {
        if (!(rate_grid[i] > 0.0)) throw ConfigError("rate grid values must be positive");
        if (i > 0 && !(rate_grid[i] > rate_grid[i - 1])) throw ConfigError("rate grid must be ascending");
    }
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (ite_max < 1) throw ConfigError("ite_max must be at least 1");
    if (eta.empty() && !(eta_spacing > 0.0)) throw ConfigError("eta spacing must be positive");
    solver.validate();
    inversion.validate();
}

double choose_theta(const ServiceDistribution& service) {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Exponential>) return 1.0;
            else if constexpr (std::is_same_v<T, Gamma>) return d.shape < 1.0 ? 1.0 : 0.0;
            else return 0.0;  // Deterministic, Uniform, Erlang
        },
        service.variant());
}

std::vector<double> split_windows(const ConstraintSchedule& schedule) {
    schedule.validate();
    const std::size_t n = schedule.size();
    std::vector<double> out{schedule.times[0]};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double prep = schedule.times[i + 1] - schedule.thresholds[i + 1];
        if (!(prep > out.back())) throw ConfigError("preparation window leaves no cruising interval");
        out.push_back(prep);
        out.push_back(schedule.times[i + 1]);
    }
    out.push_back(schedule.times[n]);
    return out;
}

std::vector<double> evaluation_nodes(const ConstraintSchedule& schedule, const OptimizerSettings& settings) {
    if (!settings.eta.empty()) return settings.eta;
    std::vector<double> out;
    const double t0 = schedule.times.front();
    for (std::size_t j = 0;; ++j) {
        const double eta = t0 + settings.eta_spacing * static_cast<double>(j);
        if (eta > schedule.times.back() + 1e-9) break;
        if (eta - t0 <= schedule.thresholds.front()) continue;  // age <= x0 holds trivially
        out.push_back(eta);
    }
    return out;
}

namespace {

// Memoized stationary CDF keyed by (rate, threshold).
class StationaryCache {
public:
    StationaryCache(const ServiceDistribution& service, double theta, const InversionSettings& inv)
        : service_(service), theta_(theta), inv_(inv) {}

    double cdf(double rate, double x) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = memo_.find({rate, x}); it != memo_.end()) return it->second;
        }
        const double v = aoi_cdf_stationary(StationaryModel(rate, service_, theta_), x, inv_);
        std::lock_guard lock(mutex_);
        memo_[{rate, x}] = v;
        return v;
    }

private:
    const ServiceDistribution& service_;
    double theta_;
    InversionSettings inv_;
    std::mutex mutex_;
    std::map<std::pair<double, double>, double> memo_;
};

std::optional<double> search(StationaryCache& cache, std::span<const RateRequirement> active,
                             const std::vector<double>& grid) {
    if (active.empty()) throw ConfigError("rate search needs at least one requirement");
    for (const auto& r : active)
        if (r.p >= 1.0) return std::nullopt;
    for (double rate : grid) {
        bool ok = true;
        for (const auto& r : active)
            if (cache.cdf(rate, r.x) < r.p) {
                ok = false;
                break;
            }
        if (ok) return rate;
    }
    return std::nullopt;
}

std::vector<Violation> evaluate(const ServiceDistribution& service, double theta, const ConstraintSchedule& schedule,
                                const PiecewiseRatePlan& plan, const OptimizerSettings& settings) {
    SolverSettings solver = settings.solver;
    solver.horizon = schedule.times.back();
    const TimeVaryingSolver tv(SystemConfig(plan.profile(), service, theta), solver);
    const auto nodes = evaluation_nodes(schedule, settings);
    std::vector<double> phi(nodes.size());
    detail::parallel_for(nodes.size(), [&](std::size_t j) {
        phi[j] = tv.cdf(nodes[j], schedule.thresholds[schedule.interval_of(nodes[j])]);
    });
    std::vector<Violation> out;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const std::size_t k = schedule.interval_of(nodes[j]);
        if (phi[j] < schedule.probabilities[k]) out.push_back({nodes[j], k, phi[j], schedule.probabilities[k]});
    }
    return out;
}

// Shared refinement loop: build a plan from targets, evaluate, raise violated targets.
template <class BuildPlan>
OptimizationResult refine(const ServiceDistribution& service, const ConstraintSchedule& schedule,
                          const OptimizerSettings& settings, double theta, BuildPlan&& build) {
    OptimizationResult result;
    result.theta = theta;
    result.targets = schedule.probabilities;
    for (int ite = 1; ite <= settings.ite_max; ++ite) {
        result.iterations = ite;
        auto plan = build(result.targets);
        if (!plan) {
            result.feasible = false;
            return result;
        }
        result.plan = std::move(*plan);
        result.violations = evaluate(service, theta, schedule, result.plan, settings);
        if (result.violations.empty()) {
            result.feasible = true;
            return result;
        }
        std::vector<bool> raised(schedule.size(), false);
        for (const auto& v : result.violations) raised[v.requirement] = true;
        for (std::size_t k = 0; k < schedule.size(); ++k)
            if (raised[k]) result.targets[k] = std::min(1.0, result.targets[k] + settings.epsilon);
    }
    result.feasible = false;
    return result;
}

}  // namespace

std::optional<double> stationary_rate_search(const ServiceDistribution& service, double theta,
                                             std::span<const RateRequirement> active,
                                             const OptimizerSettings& settings) {
    settings.validate();
    StationaryCache cache(service, theta, settings.inversion);
    return search(cache, active, settings.rate_grid);
}

OptimizationResult optimize_rates(const ServiceDistribution& service, const ConstraintSchedule& schedule,
                                  const OptimizerSettings& settings) {
    settings.validate();
    const double theta = choose_theta(service);
    const auto breaks = split_windows(schedule);
    const std::size_t n = schedule.size();
    StationaryCache cache(service, theta, settings.inversion);

    auto build = [&](const std::vector<double>& targets) -> std::optional<PiecewiseRatePlan> {
        std::vector<double> rates(breaks.size() - 1);
        for (std::size_t i = 0; i < n; ++i) {
            const RateRequirement cruise[] = {{schedule.thresholds[i], targets[i]}};
            const auto r = search(cache, cruise, settings.rate_grid);
            if (!r) return std::nullopt;
            rates[2 * i] = *r;
            if (i + 1 < n) {
                const RateRequirement prep[] = {{schedule.thresholds[i], targets[i]},
                                                {schedule.thresholds[i + 1], targets[i + 1]}};
                const auto q = search(cache, prep, settings.rate_grid);
                if (!q) return std::nullopt;
                rates[2 * i + 1] = *q;
            }
        }
        return PiecewiseRatePlan::make(breaks, std::move(rates));
    };
    return refine(service, schedule, settings, theta, build);
}

OptimizationResult benchmark_constant_rate(const ServiceDistribution& service, const ConstraintSchedule& schedule,
                                           const OptimizerSettings& settings) {
    settings.validate();
    schedule.validate();
    const double theta = choose_theta(service);
    StationaryCache cache(service, theta, settings.inversion);

    auto build = [&](const std::vector<double>& targets) -> std::optional<PiecewiseRatePlan> {
        std::vector<RateRequirement> all;
        for (std::size_t i = 0; i < schedule.size(); ++i) all.push_back({schedule.thresholds[i], targets[i]});
        const auto r = search(cache, all, settings.rate_grid);
        if (!r) return std::nullopt;
        return PiecewiseRatePlan::make({schedule.times.front(), schedule.times.back()}, {*r});
    };
    return refine(service, schedule, settings, theta, build);
}

std::vector<Violation> audit_plan(const ServiceDistribution& service, double theta, const ConstraintSchedule& schedule,
                                  const PiecewiseRatePlan& plan, const OptimizerSettings& settings) {
    schedule.validate();
    return evaluate(service, theta, schedule, plan, settings);
}

}  // namespace aoi
