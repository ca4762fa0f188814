#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aoi/grid_function.hpp"
#include "aoi/model.hpp"

namespace aoi {

enum class SweepMode {
    GaussSeidel,  // forward sweep reusing values updated in the same pass
    Jacobi,       // classic successive approximation
};

struct SolverSettings {
    double horizon = 0.0;       // T; 0 lets the caller size it from the query time
    std::size_t grid_n = 0;     // intervals on [0, T]; 0 means ceil(T / max_step)
    double max_step = 0.01;
    double etol = 1e-8;
    int ite_max = 200;
    SweepMode sweep = SweepMode::GaussSeidel;

    void validate() const;
    // Grid step used for a horizon T.
    double step_for(double T) const;
};

// M(t, inf): probability that the system is empty at time t, on [0, T].
struct IdleProbabilityCurve {
    GridFunction values;
    int iterations = 0;
    double residual = 0.0;

    double operator()(double t) const { return values(t); }
    double horizon() const { return values.t_end(); }
};

IdleProbabilityCurve solve_idle_prob(const SystemConfig& config, const SolverSettings& settings);

// G_z(t, y, 0): density of a completion at t of a packet of age y or less at completion.
double kernel_gz(const SystemConfig& config, const IdleProbabilityCurve& idle, double t, double y);

// M(t, x) = P(system empty at t, age <= x).
double m_tx(const SystemConfig& config, const IdleProbabilityCurve& idle, double t, double x);

// Phi(t, x) = P(age at t <= x). Builds its own idle curve on [0, t].
double aoi_cdf_tv(const SystemConfig& config, double t, double x, const SolverSettings& settings = {});

// Zero processing time limits.
double aoi_cdf_negligible(const RateProfile& profile, double t, double x);
double mean_aoi_negligible(const RateProfile& profile, double t);

// Reuses one idle curve for many (t, x) queries; queries are thread-safe.
class TimeVaryingSolver {
public:
    TimeVaryingSolver(SystemConfig config, SolverSettings settings);

    const SystemConfig& config() const noexcept { return config_; }
    const SolverSettings& settings() const noexcept { return settings_; }
    const IdleProbabilityCurve& idle() const noexcept { return idle_; }

    double cdf(double t, double x) const;
    double m_tx(double t, double x) const;
    std::vector<double> cdf_many(double t, std::span<const double> xs) const;

private:
    SystemConfig config_;
    SolverSettings settings_;
    IdleProbabilityCurve idle_;
};

}  // namespace aoi
