// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "aoi/errors.hpp"
#include "aoi/optimizer.hpp"
#include "aoi/simulator.hpp"
#include "aoi/stationary.hpp"
#include "aoi/tv_solver.hpp"

using namespace aoi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

SystemConfig fig2(const ServiceDistribution& s) { return {RateProfile::sinusoid(1.7, 1.0, 1.8), s, 0.6}; }

Outcome mm11_oracle() {
    const auto start = Clock::now();
    const StationaryModel m(0.8, ServiceDistribution::exponential(1.2), 0.0);
    double worst = 0.0;
    for (double x : linspace(0.0, 10.0, 100))
        worst = std::max(worst, std::abs(aoi_cdf_stationary(m, x) - closed_form_mm11(0.8, 1.2, x)));
    const double secs = seconds_since(start);
    return {worst <= 1e-8 && secs < 1.0, fmt("max error %.3g, %.3f s", worst, secs)};
}

Outcome md11_oracle() {
    const double lam = 0.8, mu = 1.2;
    const StationaryModel m(lam, ServiceDistribution::deterministic(1 / mu), 0.0);
    auto xs = linspace(0.0, 10.0, 100);
    for (double b : {1 / mu, 2 / mu})
        for (double d : {-1e-9, 0.0, 1e-9, -1e-3, 1e-3}) xs.push_back(b + d);
    double worst = 0.0;
    bool zero_exact = true;
    for (double x : xs) {
        const double v = aoi_cdf_stationary(m, x);
        worst = std::max(worst, std::abs(v - closed_form_md11(lam, mu, x)));
        if (x < 1 / mu && v != 0.0) zero_exact = false;
    }
    return {worst <= 1e-8 && zero_exact, fmt("max error %.3g, zero region exact: %s", worst, zero_exact ? "yes" : "no")};
}

Outcome preemptive_oracle() {
    double worst = 0.0;
    for (auto [lam, mu] : {std::pair{2.0, 1.0}, std::pair{0.8, 1.2}, std::pair{3.5, 1.2}}) {
        const StationaryModel m(lam, ServiceDistribution::exponential(mu), 1.0);
        for (double x : linspace(0.1, 10.0, 100))
            worst = std::max(worst, std::abs(aoi_cdf_stationary(m, x) - closed_form_mm11_preemptive(lam, mu, x)));
    }
    return {worst <= 1e-5, fmt("max error %.3g over 3 pairs", worst)};
}

Outcome dominance() {
    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    const auto xs = linspace(0.0, 20.0, 200);
    std::size_t violations = 0, pairs = 0;
    while (pairs < 5) {
        const double lam = u(rng), mu = u(rng);
        if (std::abs(lam - mu) < 1e-3) continue;
        ++pairs;
        for (double x : xs)
            if (closed_form_mm11_preemptive(lam, mu, x) < closed_form_mm11(lam, mu, x)) ++violations;
        if (!check_dominance(lam, mu, xs)) ++violations;
    }
    return {violations == 0, fmt("%zu violations over %zu pairs x 200 points", violations, pairs)};
}

Outcome tv_vs_stationary() {
    const auto start = Clock::now();
    const auto erl = ServiceDistribution::erlang(5, 1 / (5 * 1.2));
    const SystemConfig cfg(RateProfile::constant(2.0), erl, 0.5);
    const StationaryModel m(2.0, erl, 0.5);
    SolverSettings s;
    s.horizon = 50.0;
    const TimeVaryingSolver tv(cfg, s);
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.5, 4.0}) worst = std::max(worst, std::abs(tv.cdf(50.0, x) - aoi_cdf_stationary(m, x)));
    const double secs = seconds_since(start);
    return {worst <= 1e-3 && secs < 60.0, fmt("max gap %.3g, %.2f s", worst, secs)};
}

Outcome simulation_fig2() {
    const SystemConfig cfg = fig2(ServiceDistribution::erlang(5, 1 / (5 * 1.2)));
    SolverSettings s;
    s.horizon = 10.0;
    const TimeVaryingSolver tv(cfg, s);
    const auto xs = linspace(0.3, 6.0, 20);
    const auto emp = empirical_cdf(SimRequest(cfg, 10.0, 100000, 7), xs);
    const auto phi = tv.cdf_many(10.0, xs);
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::abs(emp[i] - phi[i]));
    const std::vector<double> three{3.0};
    const double jump_sim = empirical_cdf(SimRequest(cfg, 3.0, 100000, 8), three)[0];
    const double jump_tv = aoi_cdf_tv(cfg, 3.0, 3.0);
    const bool jump = jump_sim == 1.0 && jump_tv == 1.0;
    return {worst <= 0.01 && jump, fmt("max |emp - tv| %.4f at t=10; P(age(3)<=3): sim %.6f, analytic %.6f", worst,
                                       jump_sim, jump_tv)};
}

Outcome negligible() {
    const SystemConfig cfg(RateProfile::constant(1.0), ServiceDistribution::uniform(2e-3), 0.5);
    const auto xs = linspace(0.1, 5.0, 20);
    const auto emp = empirical_cdf(SimRequest(cfg, 10.0, 100000, 11), xs);
    SolverSettings s;
    s.horizon = 10.0;
    const TimeVaryingSolver tv(cfg, s);
    double sim_worst = 0.0, tv_worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double law = 1 - std::exp(-xs[i]);
        sim_worst = std::max(sim_worst, std::abs(emp[i] - law));
        tv_worst = std::max(tv_worst, std::abs(tv.cdf(10.0, xs[i]) - law));
    }
    return {sim_worst <= 0.01 && tv_worst <= 5e-3, fmt("simulator %.4f, solver %.3g", sim_worst, tv_worst)};
}

Outcome peak_lag() {
    const SystemConfig cfg(RateProfile::sinusoid(1.8, 1.0, 0.8), ServiceDistribution::exponential(1.5), 0.2);
    SolverSettings s;
    s.horizon = 14.0;
    const TimeVaryingSolver tv(cfg, s);
    double best_phi = -1, best_phi_t = 0, best_rate = -1, best_rate_t = 0;
    for (int i = 0; i <= 80; ++i) {
        const double t = 6.0 + 0.1 * i;
        const double phi = tv.cdf(t, 2.5), rate = cfg.rate.rate_at(t);
        if (phi > best_phi) best_phi = phi, best_phi_t = t;
        if (rate > best_rate) best_rate = rate, best_rate_t = t;
    }
    return {best_phi_t > best_rate_t, fmt("argmax Phi(t,2.5) = %.1f, argmax rate = %.1f", best_phi_t, best_rate_t)};
}

Outcome optimizer_fig8() {
    const auto start = Clock::now();
    const ConstraintSchedule schedule{{0, 8, 16, 24, 32, 40, 48, 56}, {7.5, 6.5, 4.5, 3, 4.5, 6.5, 7.5},
                                      std::vector<double>(7, 0.9)};
    const auto uni = ServiceDistribution::uniform(4 / 3.0);
    const auto h = optimize_rates(uni, schedule);
    const auto b = benchmark_constant_rate(uni, schedule);
    const auto audit = h.feasible ? audit_plan(uni, h.theta, schedule, h.plan) : std::vector<Violation>{};
    const double secs = seconds_since(start);
    const bool ok = h.feasible && b.feasible && audit.empty() && h.plan.cost < b.plan.cost && secs < 600;
    return {ok, fmt("heuristic cost %.4f (feasible %d, audit violations %zu), benchmark cost %.4f, %.1f s",
                    h.plan.cost, h.feasible ? 1 : 0, audit.size(), b.plan.cost, secs)};
}

Outcome picard() {
    std::vector<std::pair<SystemConfig, double>> sets;
    const double mu = 1.2;
    const std::vector<ServiceDistribution> fig2_services{
        ServiceDistribution::exponential(mu), ServiceDistribution::uniform(2 / mu),
        ServiceDistribution::gamma(mu, 1 / (mu * mu)), ServiceDistribution::erlang(5, 1 / (5 * mu))};
    for (const auto& s : fig2_services) sets.push_back({fig2(s), 10.0});
    for (const auto& rate : {RateProfile::sinusoid(1.8, 1.0, 0.8), RateProfile::constant(1.8)})
        sets.push_back({SystemConfig(rate, ServiceDistribution::exponential(1.5), 0.2), 20.0});
    for (const auto& rate : {RateProfile::sinusoid(1.0, 1.0, 0.8), RateProfile::square_wave(1.5, 0.5, 3.0, 20.0)})
        for (const auto& s : {ServiceDistribution::exponential(1.5), ServiceDistribution::uniform(2 / 1.5)})
            for (double theta : {0.1, 0.9}) sets.push_back({SystemConfig(rate, s, theta), 20.0});
    const std::vector<ServiceDistribution> fig6_services{
        ServiceDistribution::exponential(mu), ServiceDistribution::deterministic(1 / mu),
        ServiceDistribution::uniform(2 / mu), ServiceDistribution::gamma(mu, 1 / (mu * mu)),
        ServiceDistribution::gamma(1 / mu, 1.0), ServiceDistribution::erlang(5, 1 / (5 * mu))};
    for (double theta : {0.0, 0.3})
        for (const auto& s : fig6_services) sets.push_back({SystemConfig(RateProfile::constant(0.8), s, theta), 50.0});
    sets.push_back({SystemConfig(RateProfile::constant(2.0), fig6_services.back(), 0.5), 50.0});

    std::size_t failures = 0;
    double worst_residual = 0.0;
    int worst_iterations = 0;
    for (const auto& [cfg, horizon] : sets) {
        SolverSettings s;
        s.horizon = horizon;
        try {
            const auto idle = solve_idle_prob(cfg, s);
            worst_residual = std::max(worst_residual, idle.residual);
            worst_iterations = std::max(worst_iterations, idle.iterations);
            bool bounded = idle.values.values().front() == 1.0;
            for (double v : idle.values.values()) bounded = bounded && v >= 0.0 && v <= 1.0;
            if (!bounded || idle.residual > s.etol || idle.iterations > s.ite_max) ++failures;
        } catch (const Error&) {
            ++failures;
        }
    }
    return {failures == 0, fmt("%zu parameter sets, %zu failures, worst residual %.3g, max iterations %d",
                               sets.size(), failures, worst_residual, worst_iterations)};
}

void timing_note() {
    const SystemConfig cfg = fig2(ServiceDistribution::erlang(5, 1 / (5 * 1.2)));
    auto start = Clock::now();
    const double phi = aoi_cdf_tv(cfg, 10.0, 2.0);
    const double numeric = seconds_since(start);
    start = Clock::now();
    const std::vector<double> xs{2.0};
    const double emp = empirical_cdf(SimRequest(cfg, 10.0, 100000, 5), xs)[0];
    const double sim = seconds_since(start);
    std::printf("INFO timing: single (t,x) query %.3f s (Phi %.4f) vs 1e5-replication simulation %.3f s (%.4f)\n",
                numeric, phi, sim, emp);
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"closed-form M/M/1/1 oracle", mm11_oracle},
        {"closed-form M/D/1/1 oracle", md11_oracle},
        {"Laplace inversion vs preemptive M/M/1/1", preemptive_oracle},
        {"stochastic dominance of preemption", dominance},
        {"time-varying solver reaches the stationary law", tv_vs_stationary},
        {"simulation cross-validation", simulation_fig2},
        {"negligible-processing law", negligible},
        {"peak lag behind the rate maximum", peak_lag},
        {"optimizer end-to-end", optimizer_fig8},
        {"Picard convergence of the idle equation", picard},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    timing_note();
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
