#include "aoi/rate_profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aoi/errors.hpp"

namespace aoi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void check_rate(double r) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw ConfigError("arrival rate must be finite and nonnegative, got " + std::to_string(r));
}

// Index of the piece containing t.
std::size_t piece_index(const PiecewiseConstantRate& p, double t) {
    if (t < p.starts.front())
        throw DomainError("time " + std::to_string(t) + " precedes the first rate piece");
    auto it = std::upper_bound(p.starts.begin(), p.starts.end(), t);
    return static_cast<std::size_t>(it - p.starts.begin()) - 1;
}

}  // namespace

RateProfile::RateProfile(Variant v) : v_(std::move(v)) {
    std::visit(overloaded{
                   [](const ConstantRate& c) { check_rate(c.rate); },
                   [](const SinusoidRate& s) {
                       if (!std::isfinite(s.base) || !std::isfinite(s.amplitude) ||
                           !std::isfinite(s.frequency))
                           throw ConfigError("sinusoid parameters must be finite");
                       if (s.base < std::abs(s.amplitude))
                           throw ConfigError("sinusoid rate goes negative: base < |amplitude|");
                   },
                   [](const PiecewiseConstantRate& p) {
                       if (p.starts.empty() || p.starts.size() != p.rates.size())
                           throw ConfigError("piecewise rate needs one rate per breakpoint");
                       for (std::size_t i = 1; i < p.starts.size(); ++i)
                           if (!(p.starts[i] > p.starts[i - 1]))
                               throw ConfigError("piecewise rate breakpoints must increase strictly");
                       for (double r : p.rates) check_rate(r);
                   },
                   [](const TabulatedRate& t) {
                       for (double r : t.table.values()) check_rate(r);
                   },
               },
               v_);
}

RateProfile RateProfile::constant(double rate) { return RateProfile(ConstantRate{rate}); }

RateProfile RateProfile::sinusoid(double base, double amplitude, double frequency) {
    return RateProfile(SinusoidRate{base, amplitude, frequency});
}

RateProfile RateProfile::piecewise_constant(std::vector<double> starts, std::vector<double> rates) {
    return RateProfile(PiecewiseConstantRate{std::move(starts), std::move(rates)});
}

RateProfile RateProfile::tabulated(double t0, double step, std::vector<double> values) {
    return RateProfile(TabulatedRate{GridFunction(t0, step, std::move(values))});
}

RateProfile RateProfile::square_wave(double high, double low, double half_period, double horizon) {
    if (!(half_period > 0.0)) throw ConfigError("square wave half period must be positive");
    std::vector<double> starts, rates;
    for (std::size_t k = 0; static_cast<double>(k) * half_period <= horizon; ++k) {
        starts.push_back(static_cast<double>(k) * half_period);
        rates.push_back(k % 2 == 0 ? high : low);
    }
    return piecewise_constant(std::move(starts), std::move(rates));
}

double RateProfile::rate_at(double t) const {
    return std::visit(overloaded{
                          [](const ConstantRate& c) { return c.rate; },
                          [t](const SinusoidRate& s) {
                              return std::max(0.0, s.base + s.amplitude * std::sin(s.frequency * t));
                          },
                          [t](const PiecewiseConstantRate& p) { return p.rates[piece_index(p, t)]; },
                          [t](const TabulatedRate& tab) { return tab.table(t); },
                      },
                      v_);
}

double RateProfile::integral(double t0, double t1) const {
    if (t0 > t1)
        throw DomainError("rate integral over reversed interval [" + std::to_string(t0) + ", " +
                          std::to_string(t1) + "]");
    if (t0 == t1) return 0.0;
    return std::visit(
        overloaded{
            [&](const ConstantRate& c) { return c.rate * (t1 - t0); },
            [&](const SinusoidRate& s) {
                if (s.frequency == 0.0) return s.base * (t1 - t0);
                // cos a - cos b = 2 sin((a+b)/2) sin((b-a)/2) avoids cancellation on short intervals.
                const double w = s.frequency;
                const double osc = 2.0 * std::sin(0.5 * w * (t0 + t1)) * std::sin(0.5 * w * (t1 - t0));
                return s.base * (t1 - t0) + s.amplitude / w * osc;
            },
            [&](const PiecewiseConstantRate& p) {
                std::size_t k = piece_index(p, t0);
                double acc = 0.0;
                double a = t0;
                while (true) {
                    const double end = k + 1 < p.starts.size() ? p.starts[k + 1] : t1;
                    const double b = std::min(end, t1);
                    acc += p.rates[k] * (b - a);
                    if (b >= t1) break;
                    a = b;
                    ++k;
                }
                return acc;
            },
            [&](const TabulatedRate& tab) { return tab.table.integral(t0, t1); },
        },
        v_);
}

std::vector<RateProfile::Segment> RateProfile::rate_bounds(double t0, double t1) const {
    if (t0 > t1) throw DomainError("rate bounds over reversed interval");
    return std::visit(
        overloaded{
            [&](const ConstantRate& c) { return std::vector<Segment>{{t0, t1, c.rate}}; },
            [&](const SinusoidRate& s) {
                return std::vector<Segment>{{t0, t1, s.base + std::abs(s.amplitude)}};
            },
            [&](const PiecewiseConstantRate& p) {
                std::vector<Segment> out;
                std::size_t k = piece_index(p, t0);
                double a = t0;
                while (a < t1) {
                    const double end = k + 1 < p.starts.size() ? p.starts[k + 1] : t1;
                    const double b = std::min(end, t1);
                    out.push_back({a, b, p.rates[k]});
                    a = b;
                    ++k;
                }
                return out;
            },
            [&](const TabulatedRate& tab) {
                const auto& g = tab.table;
                if (!g.contains(t0) || !g.contains(t1))
                    throw DomainError("tabulated rate bounds outside the table");
                std::vector<Segment> out;
                double a = t0;
                while (a < t1) {
                    auto i = static_cast<std::size_t>((a - g.t0()) / g.step());
                    i = std::min(i, g.intervals() - 1);
                    const double b = std::min(g.node(i + 1), t1);
                    out.push_back({a, b, std::max(g[i], g[i + 1])});
                    if (b <= a) break;
                    a = b;
                }
                return out;
            },
        },
        v_);
}

double RateProfile::max_rate(double t0, double t1) const {
    double m = 0.0;
    for (const auto& s : rate_bounds(t0, t1)) m = std::max(m, s.bound);
    return m;
}

double rate_integral(const RateProfile& p, double t0, double t1) { return p.integral(t0, t1); }

}  // namespace aoi
