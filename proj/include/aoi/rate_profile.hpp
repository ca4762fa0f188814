#pragma once

#include <variant>
#include <vector>

#include "aoi/grid_function.hpp"

namespace aoi {

struct ConstantRate {
    double rate;
};

// base + amplitude * sin(frequency * t); requires base >= |amplitude|.
struct SinusoidRate {
    double base;
    double amplitude;
    double frequency;
};

// rates[k] applies on [starts[k], starts[k+1]); the last rate extends to infinity.
struct PiecewiseConstantRate {
    std::vector<double> starts;
    std::vector<double> rates;
};

struct TabulatedRate {
    GridFunction table;
};

// Time-varying arrival rate lambda(t) of a non-homogeneous Poisson process.
// Immutable after construction; all rates are validated to be nonnegative.
class RateProfile {
public:
    using Variant = std::variant<ConstantRate, SinusoidRate, PiecewiseConstantRate, TabulatedRate>;

    explicit RateProfile(Variant v);

    static RateProfile constant(double rate);
    static RateProfile sinusoid(double base, double amplitude, double frequency);
    static RateProfile piecewise_constant(std::vector<double> starts, std::vector<double> rates);
    static RateProfile tabulated(double t0, double step, std::vector<double> values);
    // Alternates high, low, high, ... every half_period starting at t = 0, up to horizon.
    static RateProfile square_wave(double high, double low, double half_period, double horizon);

    double rate_at(double t) const;
    // Integral of lambda over [t0, t1]; closed form except for tabulated
    // profiles, which integrate their linear interpolant exactly.
    double integral(double t0, double t1) const;

    // Upper bounds of lambda on consecutive pieces covering [t0, t1], used for thinning.
    struct Segment {
        double start;
        double end;
        double bound;
    };
    std::vector<Segment> rate_bounds(double t0, double t1) const;
    double max_rate(double t0, double t1) const;

    const Variant& variant() const noexcept { return v_; }

private:
    Variant v_;
};

inline double rate_at(const RateProfile& p, double t) { return p.rate_at(t); }
double rate_integral(const RateProfile& p, double t0, double t1);

}  // namespace aoi
