#include "aoi/figures.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "aoi/errors.hpp"
#include "aoi/optimizer.hpp"
#include "aoi/simulator.hpp"
#include "aoi/stationary.hpp"

namespace aoi {

namespace {

struct NamedService {
    std::string name;
    ServiceDistribution dist;
};

std::vector<double> range(double start, double stop, double step) {
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::llround((stop - start) / step));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(start + step * static_cast<double>(i));
    return out;
}

constexpr std::size_t kCdfReplications = 100000;
constexpr std::size_t kCurveReplications = 10000;

std::size_t reps_or(const FigureOptions& o, std::size_t fallback) { return o.replications.value_or(fallback); }

// Seeds distinct panels of one figure from one user seed.
std::uint64_t panel_seed(const FigureOptions& o, std::uint64_t panel) { return o.seed * 1000003ULL + panel; }

SolverSettings with_horizon(SolverSettings s, double horizon) {
    s.horizon = horizon;
    return s;
}

std::vector<double> simulated(const SystemConfig& config, double t, std::span<const double> xs, std::size_t reps,
                              std::uint64_t seed) {
    return empirical_cdf(SimRequest(config, t, reps, seed), xs);
}

Table fig2(double t, const FigureOptions& o) {
    const double mu = 1.2;
    const std::vector<NamedService> services{
        {"exp", ServiceDistribution::exponential(mu)},
        {"uni", ServiceDistribution::uniform(2.0 / mu)},
        {"gam1", ServiceDistribution::gamma(mu, 1.0 / (mu * mu))},
        {"erlang", ServiceDistribution::erlang(5, 1.0 / (5.0 * mu))},
    };
    const auto xs = range(0.0, t < 5 ? 4.0 : 6.0, 0.1);
    const auto reps = reps_or(o, kCdfReplications);
    Table table{{"service", "t", "x", "analytic", "simulated"}};
    for (std::size_t k = 0; k < services.size(); ++k) {
        const SystemConfig config(RateProfile::sinusoid(1.7, 1.0, 1.8), services[k].dist, 0.6);
        const TimeVaryingSolver solver(config, with_horizon(o.solver, t));
        const auto phi = solver.cdf_many(t, xs);
        const auto sim = simulated(config, t, xs, reps, panel_seed(o, k));
        for (std::size_t i = 0; i < xs.size(); ++i) table.add({services[k].name, t, xs[i], phi[i], sim[i]});
    }
    table.meta = {{"rate", "1.7+sin(1.8t)"}, {"mu", mu}, {"theta", 0.6}, {"replications", reps}};
    return table;
}

// Phi(t, x) against t for several thresholds, simulated from one sample set per t.
void time_curves(Table& table, const std::vector<Cell>& prefix, const SystemConfig& config,
                 const std::vector<double>& ts, const std::vector<double>& xs, const FigureOptions& o,
                 std::size_t reps, std::uint64_t seed) {
    const TimeVaryingSolver solver(config, with_horizon(o.solver, ts.back()));
    for (std::size_t j = 0; j < ts.size(); ++j) {
        const double t = ts[j];
        const auto phi = solver.cdf_many(t, xs);
        const auto sim = simulated(config, t, xs, reps, seed * 7919ULL + j);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::vector<Cell> row = prefix;
            row.insert(row.end(), {t, config.rate.rate_at(t), xs[i], phi[i], sim[i]});
            table.add(std::move(row));
        }
    }
}

Table fig4(bool sinusoidal, const FigureOptions& o) {
    const auto rate = sinusoidal ? RateProfile::sinusoid(1.8, 1.0, 0.8) : RateProfile::constant(1.8);
    const SystemConfig config(rate, ServiceDistribution::exponential(1.5), 0.2);
    const auto reps = reps_or(o, kCurveReplications);
    Table table{{"t", "rate", "x", "analytic", "simulated"}};
    time_curves(table, {}, config, range(0.0, 20.0, 0.5), {0.5, 1.5, 2.5, 3.5}, o, reps, panel_seed(o, 0));
    table.meta = {{"rate", sinusoidal ? "1.8+sin(0.8t)" : "1.8"}, {"mu", 1.5}, {"theta", 0.2},
                  {"replications", reps}};
    return table;
}

Table fig5(const FigureOptions& o) {
    const double mu = 1.5;
    const std::vector<std::pair<std::string, RateProfile>> profiles{
        {"sin", RateProfile::sinusoid(1.0, 1.0, 0.8)},
        {"square", RateProfile::square_wave(1.5, 0.5, 3.0, 20.0)},
    };
    const std::vector<NamedService> services{
        {"exp", ServiceDistribution::exponential(mu)},
        {"uni", ServiceDistribution::uniform(2.0 / mu)},
    };
    const auto reps = reps_or(o, kCurveReplications);
    Table table{{"profile", "service", "theta", "t", "rate", "x", "analytic", "simulated"}};
    std::uint64_t panel = 0;
    for (const auto& [pname, profile] : profiles)
        for (const auto& svc : services)
            for (double theta : {0.1, 0.9}) {
                const SystemConfig config(profile, svc.dist, theta);
                time_curves(table, {pname, svc.name, theta}, config, range(0.0, 20.0, 0.5), {0.8, 3.0}, o, reps,
                            panel_seed(o, panel++));
            }
    table.meta = {{"mu", mu}, {"replications", reps}};
    return table;
}

// Stationary panels; pdf entries that fail inversion diagnostics are NaN.
void stationary_rows(Table& table, const std::string& panel, const std::string& service_name,
                     const StationaryModel& model, const std::vector<double>& xs, std::size_t reps,
                     std::uint64_t seed) {
    const SystemConfig config(RateProfile::constant(model.lambda), model.service, model.theta);
    const auto sim = simulated(config, 50.0, xs, reps, seed);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double pdf;
        try {
            pdf = aoi_pdf_stationary(model, xs[i]);
        } catch (const InversionError&) {
            pdf = std::nan("");
        }
        table.add({panel, service_name, model.theta, xs[i], aoi_cdf_stationary(model, xs[i]), pdf, sim[i]});
    }
}

Table fig6(const FigureOptions& o) {
    const double mu = 1.2;
    const std::vector<NamedService> services{
        {"exp", ServiceDistribution::exponential(mu)},
        {"det", ServiceDistribution::deterministic(1.0 / mu)},
        {"uni", ServiceDistribution::uniform(2.0 / mu)},
        {"gam1", ServiceDistribution::gamma(mu, 1.0 / (mu * mu))},
        {"gam2", ServiceDistribution::gamma(1.0 / mu, 1.0)},
        {"erlang", ServiceDistribution::erlang(5, 1.0 / (5.0 * mu))},
    };
    const auto reps = reps_or(o, kCdfReplications);
    const auto xs = range(0.0, 8.0, 0.1);
    Table table{{"panel", "service", "theta", "x", "cdf", "pdf", "simulated"}};
    std::uint64_t panel = 0;
    for (double theta : {0.0, 0.3})
        for (const auto& svc : services)
            stationary_rows(table, "lambda=0.8", svc.name, StationaryModel(0.8, svc.dist, theta), xs, reps,
                            panel_seed(o, panel++));
    stationary_rows(table, "lambda=2", "erlang", StationaryModel(2.0, services.back().dist, 0.5), xs, reps,
                    panel_seed(o, panel++));
    table.meta = {{"mu", mu}, {"simulation_time", 50.0}, {"replications", reps}};
    return table;
}

Table fig7(const FigureOptions& o) {
    const double mu = 1.2;
    const auto service = ServiceDistribution::erlang(2, 1.0 / (2.0 * mu));
    const auto reps = reps_or(o, kCdfReplications);
    const auto xs = range(0.0, 5.0, 0.05);
    Table table{{"panel", "service", "theta", "x", "cdf", "pdf", "simulated"}};
    std::uint64_t panel = 0;
    for (double theta : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0})
        stationary_rows(table, "lambda=3.5", "erlang2", StationaryModel(3.5, service, theta), xs, reps,
                        panel_seed(o, panel++));
    table.meta = {{"mu", mu}, {"lambda", 3.5}, {"simulation_time", 50.0}, {"replications", reps}};
    return table;
}

Table fig8(const FigureOptions& o) {
    const ConstraintSchedule schedule{{0, 8, 16, 24, 32, 40, 48, 56},
                                      {7.5, 6.5, 4.5, 3, 4.5, 6.5, 7.5},
                                      {0.9, 0.9, 0.9, 0.9, 0.9, 0.9, 0.9}};
    const auto service = ServiceDistribution::uniform(4.0 / 3.0);
    OptimizerSettings settings;
    settings.solver = o.solver;
    const auto reps = reps_or(o, kCurveReplications);
    Table table{{"plan", "t", "rate", "threshold", "target", "analytic", "simulated", "cost"}};
    nlohmann::json meta = nlohmann::json::object();
    std::uint64_t panel = 0;
    for (const auto& [name, result] : {std::pair{std::string("heuristic"), optimize_rates(service, schedule, settings)},
                                       std::pair{std::string("benchmark"),
                                                 benchmark_constant_rate(service, schedule, settings)}}) {
        const SystemConfig config(result.plan.profile(), service, result.theta);
        const TimeVaryingSolver solver(config, with_horizon(o.solver, schedule.times.back()));
        const auto ts = range(0.0, 55.5, 0.5);
        const auto seed = panel_seed(o, panel++);
        for (std::size_t j = 0; j < ts.size(); ++j) {
            const double t = ts[j];
            const std::size_t k = schedule.interval_of(t);
            const double x = schedule.thresholds[k];
            const double sim = simulated(config, t, std::vector<double>{x}, reps, seed * 7919ULL + j)[0];
            table.add({name, t, config.rate.rate_at(t), x, schedule.probabilities[k], solver.cdf(t, x), sim,
                       result.plan.cost});
        }
        meta[name] = {{"feasible", result.feasible}, {"cost", result.plan.cost}, {"iterations", result.iterations}};
    }
    meta["replications"] = reps;
    table.meta = meta;
    return table;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"fig2a", "fig2b", "fig4a", "fig4b", "fig5", "fig6", "fig7", "fig8"};
    return ids;
}

Table reproduce_figure(const std::string& id, const FigureOptions& options) {
    Table table;
    if (id == "fig2a") table = fig2(3.0, options);
    else if (id == "fig2b") table = fig2(10.0, options);
    else if (id == "fig4a") table = fig4(true, options);
    else if (id == "fig4b") table = fig4(false, options);
    else if (id == "fig5") table = fig5(options);
    else if (id == "fig6") table = fig6(options);
    else if (id == "fig7") table = fig7(options);
    else if (id == "fig8") table = fig8(options);
    else throw ConfigError("unknown figure id '" + id + "'");
    table.meta["figure"] = id;
    table.meta["seed"] = options.seed;
    return table;
}

}  // namespace aoi
