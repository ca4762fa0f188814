#include "aoi/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "aoi/config.hpp"
#include "aoi/errors.hpp"
#include "aoi/figures.hpp"
#include "aoi/optimizer.hpp"
#include "aoi/simulator.hpp"
#include "aoi/stationary.hpp"
#include "aoi/tv_solver.hpp"

namespace aoi {

namespace {

using nlohmann::json;

const json& section(const json& doc, const std::string& key) {
    static const json empty = json::object();
    if (!doc.contains(key)) return empty;
    if (!doc.at(key).is_object()) throw ConfigError("config section '" + key + "' must be an object");
    return doc.at(key);
}

// Either an explicit array or {"start", "stop", "count"}.
std::vector<double> number_grid(const json& sec, const std::string& key) {
    if (!sec.contains(key)) throw ConfigError("missing config key '" + key + "'");
    const json& v = sec.at(key);
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& e : v) {
            if (!e.is_number()) throw ConfigError("'" + key + "' must hold numbers");
            out.push_back(e.get<double>());
        }
    } else if (v.is_object()) {
        const double a = json_number(v, "start"), b = json_number(v, "stop");
        const double n = json_number(v, "count");
        if (n < 1 || n != std::floor(n)) throw ConfigError("'" + key + ".count' must be a positive integer");
        const auto count = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    } else {
        throw ConfigError("'" + key + "' must be an array or a {start, stop, count} object");
    }
    if (out.empty()) throw ConfigError("'" + key + "' is empty");
    return out;
}

SolverSettings solver_settings(const json& doc, const ExperimentSpec& spec) {
    const json& sec = section(doc, "solver");
    SolverSettings s;
    s.max_step = json_number_or(sec, "max_step", s.max_step);
    s.etol = json_number_or(sec, "etol", s.etol);
    s.ite_max = static_cast<int>(json_number_or(sec, "ite_max", s.ite_max));
    s.grid_n = static_cast<std::size_t>(json_number_or(sec, "grid_n", 0.0));
    if (sec.contains("sweep")) {
        const std::string mode = sec.at("sweep").get<std::string>();
        if (mode == "gauss_seidel") s.sweep = SweepMode::GaussSeidel;
        else if (mode == "jacobi") s.sweep = SweepMode::Jacobi;
        else throw ConfigError("solver.sweep must be 'gauss_seidel' or 'jacobi'");
    }
    if (spec.grid_n) s.grid_n = *spec.grid_n;
    if (spec.etol) s.etol = *spec.etol;
    s.validate();
    return s;
}

InversionSettings inversion_settings(const json& doc) {
    const json& sec = section(doc, "inversion");
    InversionSettings s;
    s.gamma = json_number_or(sec, "gamma", s.gamma);
    s.a = json_number_or(sec, "a", s.a);
    s.terms = static_cast<int>(json_number_or(sec, "terms", s.terms));
    s.euler_terms = static_cast<int>(json_number_or(sec, "euler_terms", s.euler_terms));
    s.validate();
    return s;
}

Table solve_tv(const json& doc, const ExperimentSpec& spec) {
    const SystemConfig config = system_from_json(doc);
    const json& sec = section(doc, "solve_tv");
    const auto times = number_grid(sec, "times");
    const auto xs = number_grid(sec, "xs");
    SolverSettings settings = solver_settings(doc, spec);
    settings.horizon = *std::max_element(times.begin(), times.end());
    Table table{{"t", "x", "Phi"}};
    if (!(settings.horizon > 0.0)) {
        for (double t : times)
            for (double x : xs) table.add({t, x, aoi_cdf_tv(config, t, x, settings)});
        return table;
    }
    const TimeVaryingSolver solver(config, settings);
    for (double t : times) {
        const auto phi = solver.cdf_many(t, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) table.add({t, xs[i], phi[i]});
    }
    table.meta = {{"command", "solve-tv"},
                  {"idle_iterations", solver.idle().iterations},
                  {"idle_residual", solver.idle().residual},
                  {"step", solver.idle().values.step()}};
    return table;
}

double constant_rate(const json& doc) {
    if (doc.contains("lambda")) return json_number(doc, "lambda");
    const RateProfile rate = rate_from_json(section(doc, "rate"));
    if (auto c = std::get_if<ConstantRate>(&rate.variant())) return c->rate;
    throw ConfigError("solve-stationary needs a constant rate");
}

Table solve_stationary(const json& doc) {
    const StationaryModel model(constant_rate(doc), service_from_json(section(doc, "service")),
                                json_number(doc, "theta"));
    const json& sec = section(doc, "solve_stationary");
    const auto xs = number_grid(sec, "xs");
    const bool with_pdf = sec.value("pdf", true);
    const auto inv = inversion_settings(doc);
    Table table{with_pdf ? std::vector<std::string>{"x", "cdf", "pdf"} : std::vector<std::string>{"x", "cdf"}};
    for (double x : xs) {
        if (with_pdf) table.add({x, aoi_cdf_stationary(model, x, inv), aoi_pdf_stationary(model, x, inv)});
        else table.add({x, aoi_cdf_stationary(model, x, inv)});
    }
    table.meta = {{"command", "solve-stationary"}, {"m_infinity", m_infinity(model)}};
    return table;
}

Table simulate(const json& doc, const ExperimentSpec& spec) {
    const SystemConfig config = system_from_json(doc);
    const json& sec = section(doc, "simulate");
    const auto xs = number_grid(sec, "xs");
    const double time = json_number(sec, "time");
    std::size_t reps = static_cast<std::size_t>(json_number_or(sec, "replications", 100000));
    std::uint64_t seed = static_cast<std::uint64_t>(json_number_or(sec, "seed", 1));
    if (spec.replications) reps = *spec.replications;
    if (spec.seed) seed = *spec.seed;
    const SimRequest request(config, time, reps, seed);
    const auto cdf = empirical_cdf(request, xs);
    Table table{{"x", "empirical", "n", "seed"}};
    for (std::size_t i = 0; i < xs.size(); ++i)
        table.add({xs[i], cdf[i], static_cast<long long>(reps), static_cast<long long>(seed)});
    table.meta = {{"command", "simulate"}, {"time", time}};
    return table;
}

void add_plan_rows(Table& table, const std::string& name, const OptimizationResult& r) {
    for (std::size_t k = 0; k < r.plan.rates.size(); ++k)
        table.add({name, static_cast<long long>(k), r.plan.breakpoints[k], r.plan.breakpoints[k + 1], r.plan.rates[k],
                   r.plan.cost});
}

json result_meta(const OptimizationResult& r) {
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"eta", v.eta}, {"requirement", v.requirement}, {"phi", v.phi}, {"target", v.target}});
    return {{"feasible", r.feasible}, {"theta", r.theta},        {"cost", r.plan.cost},
            {"iterations", r.iterations}, {"targets", r.targets}, {"violations", violations}};
}

Table optimize(const json& doc, const ExperimentSpec& spec) {
    const ServiceDistribution service = service_from_json(section(doc, "service"));
    const json& sec = section(doc, "optimize");
    ConstraintSchedule schedule{number_grid(sec, "times"), number_grid(sec, "thresholds"),
                                number_grid(sec, "probabilities")};
    schedule.validate();
    OptimizerSettings settings;
    settings.epsilon = json_number_or(sec, "epsilon", settings.epsilon);
    settings.ite_max = static_cast<int>(json_number_or(sec, "ite_max", settings.ite_max));
    settings.eta_spacing = json_number_or(sec, "eta_spacing", settings.eta_spacing);
    if (sec.contains("rate_grid")) settings.rate_grid = number_grid(sec, "rate_grid");
    settings.solver = solver_settings(doc, spec);
    settings.inversion = inversion_settings(doc);

    Table table{{"plan", "row", "start", "end", "rate", "cost"}};
    const auto heuristic = optimize_rates(service, schedule, settings);
    add_plan_rows(table, "heuristic", heuristic);
    table.meta = {{"command", "optimize"}, {"heuristic", result_meta(heuristic)}};
    bool feasible = heuristic.feasible;
    if (sec.value("benchmark", true)) {
        const auto bench = benchmark_constant_rate(service, schedule, settings);
        add_plan_rows(table, "benchmark", bench);
        table.meta["benchmark"] = result_meta(bench);
        feasible = feasible && bench.feasible;
    }
    table.meta["feasible"] = feasible;
    return table;
}

Table figure(const ExperimentSpec& spec) {
    FigureOptions options;
    if (spec.seed) options.seed = *spec.seed;
    options.replications = spec.replications;
    if (spec.grid_n) options.solver.grid_n = *spec.grid_n;
    if (spec.etol) options.solver.etol = *spec.etol;
    return reproduce_figure(spec.figure, options);
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const ConvergenceError*>(&e) || dynamic_cast<const InversionError*>(&e)) return kExitNumerical;
    return kExitConfig;
}

void report(std::ostream& err, const std::string& kind, const std::string& message, int code,
            json extra = json::object()) {
    json rec{{"kind", kind}, {"message", message}, {"exit_code", code}};
    rec.update(extra);
    err << json{{"error", rec}}.dump() << '\n';
}

}  // namespace

Table execute(const ExperimentSpec& spec) {
    if (spec.format != "csv" && spec.format != "json") throw ConfigError("format must be 'csv' or 'json'");
    if (spec.command == "reproduce-figure") return figure(spec);
    if (spec.config_path.empty()) throw ConfigError("command '" + spec.command + "' needs --config");
    if (!std::filesystem::exists(spec.config_path))
        throw ConfigError("config file '" + spec.config_path + "' does not exist");
    const json doc = load_json_file(spec.config_path);
    if (spec.command == "solve-tv") return solve_tv(doc, spec);
    if (spec.command == "solve-stationary") return solve_stationary(doc);
    if (spec.command == "simulate") return simulate(doc, spec);
    if (spec.command == "optimize") return optimize(doc, spec);
    throw ConfigError("unknown command '" + spec.command + "'");
}

int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        const Table table = execute(spec);
        auto emit = [&](std::ostream& os) {
            if (spec.format == "json") write_json(table, os);
            else write_csv(table, os);
        };
        if (spec.out_path.empty()) {
            emit(out);
        } else {
            std::ofstream file(spec.out_path);
            if (!file) throw ConfigError("cannot write output file '" + spec.out_path + "'");
            emit(file);
        }
        if (table.meta.contains("feasible") && !table.meta.at("feasible").get<bool>()) {
            report(err, "infeasible", "no rate plan met every constraint within ite_max refinements",
                   kExitInfeasible);
            return kExitInfeasible;
        }
        return kExitOk;
    } catch (const ConvergenceError& e) {
        report(err, e.kind(), e.what(), kExitNumerical, {{"residual", e.residual()}, {"iterations", e.iterations()}});
        return kExitNumerical;
    } catch (const Error& e) {
        const int code = exit_code_for(e);
        report(err, e.kind(), e.what(), code);
        return code;
    } catch (const nlohmann::json::exception& e) {
        report(err, "config", e.what(), kExitConfig);
        return kExitConfig;
    } catch (const std::exception& e) {
        report(err, "internal", e.what(), kExitFailure);
        return kExitFailure;
    }
}

}  // namespace aoi
