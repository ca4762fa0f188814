#include "aoi/service_distribution.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "aoi/errors.hpp"

namespace aoi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(std::string(what) + " must be positive and finite");
}

struct GammaView {
    double shape;
    double scale;
};

GammaView as_gamma(const ServiceDistribution::Variant& v) {
    if (auto g = std::get_if<Gamma>(&v)) return {g->shape, g->scale};
    const auto& e = std::get<Erlang>(v);
    return {static_cast<double>(e.stages), e.scale};
}

double gamma_pdf(GammaView g, double z) {
    if (z < 0.0) return 0.0;
    if (z == 0.0) {
        if (g.shape < 1.0) return std::numeric_limits<double>::infinity();
        return g.shape == 1.0 ? 1.0 / g.scale : 0.0;
    }
    return boost::math::gamma_p_derivative(g.shape, z / g.scale) / g.scale;
}

}  // namespace

ServiceDistribution::ServiceDistribution(Variant v) : v_(v) {
    std::visit(overloaded{
                   [](const Exponential& e) { require_positive(e.rate, "exponential rate"); },
                   [](const Deterministic& d) { require_positive(d.value, "deterministic service time"); },
                   [](const Uniform& u) { require_positive(u.upper, "uniform upper bound"); },
                   [](const Gamma& g) {
                       require_positive(g.shape, "gamma shape");
                       require_positive(g.scale, "gamma scale");
                   },
                   [](const Erlang& e) {
                       if (e.stages < 1) throw ConfigError("erlang stages must be at least 1");
                       require_positive(e.scale, "erlang scale");
                   },
               },
               v_);
}

ServiceDistribution ServiceDistribution::exponential(double rate) { return ServiceDistribution(Exponential{rate}); }
ServiceDistribution ServiceDistribution::deterministic(double value) {
    return ServiceDistribution(Deterministic{value});
}
ServiceDistribution ServiceDistribution::uniform(double upper) { return ServiceDistribution(Uniform{upper}); }
ServiceDistribution ServiceDistribution::gamma(double shape, double scale) {
    return ServiceDistribution(Gamma{shape, scale});
}
ServiceDistribution ServiceDistribution::erlang(int stages, double scale) {
    return ServiceDistribution(Erlang{stages, scale});
}

double ServiceDistribution::cdf(double z) const {
    if (z <= 0.0) return 0.0;
    return std::visit(overloaded{
                          [z](const Exponential& e) { return -std::expm1(-e.rate * z); },
                          [z](const Deterministic& d) { return z >= d.value ? 1.0 : 0.0; },
                          [z](const Uniform& u) { return std::min(1.0, z / u.upper); },
                          [this, z](const auto&) {
                              const auto g = as_gamma(v_);
                              return boost::math::gamma_p(g.shape, z / g.scale);
                          },
                      },
                      v_);
}

double ServiceDistribution::ccdf(double z) const {
    if (z <= 0.0) return 1.0;
    return std::visit(overloaded{
                          [z](const Exponential& e) { return std::exp(-e.rate * z); },
                          [z](const Deterministic& d) { return z >= d.value ? 0.0 : 1.0; },
                          [z](const Uniform& u) { return std::max(0.0, 1.0 - z / u.upper); },
                          [this, z](const auto&) {
                              const auto g = as_gamma(v_);
                              return boost::math::gamma_q(g.shape, z / g.scale);
                          },
                      },
                      v_);
}

double ServiceDistribution::pdf(double z) const {
    return std::visit(overloaded{
                          [z](const Exponential& e) { return z < 0.0 ? 0.0 : e.rate * std::exp(-e.rate * z); },
                          [](const Deterministic&) -> double {
                              throw UnsupportedOperation("deterministic service time has no density");
                          },
                          [z](const Uniform& u) { return z < 0.0 || z > u.upper ? 0.0 : 1.0 / u.upper; },
                          [this, z](const auto&) { return gamma_pdf(as_gamma(v_), z); },
                      },
                      v_);
}

std::complex<double> ServiceDistribution::lst(std::complex<double> s) const {
    using C = std::complex<double>;
    return std::visit(overloaded{
                          [s](const Exponential& e) { return C(e.rate) / (e.rate + s); },
                          [s](const Deterministic& d) { return std::exp(-s * d.value); },
                          [s](const Uniform& u) {
                              const C w = s * u.upper;
                              if (std::abs(w) < 1e-4) return 1.0 - w / 2.0 + w * w / 6.0 - w * w * w / 24.0;
                              return (1.0 - std::exp(-w)) / w;
                          },
                          [this, s](const auto&) {
                              const auto g = as_gamma(v_);
                              return std::pow(1.0 + g.scale * s, -g.shape);
                          },
                      },
                      v_);
}

std::complex<double> ServiceDistribution::cdf_transform(std::complex<double> s) const { return lst(s) / s; }

double ServiceDistribution::integrated_cdf(double z) const {
    if (z <= 0.0) return 0.0;
    return std::visit(overloaded{
                          [z](const Exponential& e) { return z + std::expm1(-e.rate * z) / e.rate; },
                          [z](const Deterministic& d) { return std::max(0.0, z - d.value); },
                          [z](const Uniform& u) {
                              return z <= u.upper ? z * z / (2.0 * u.upper) : z - u.upper / 2.0;
                          },
                          [this, z](const auto&) {
                              const auto g = as_gamma(v_);
                              const double y = z / g.scale;
                              // z F(z) - E[S; S <= z]
                              return z * boost::math::gamma_p(g.shape, y) -
                                     g.shape * g.scale * boost::math::gamma_p(g.shape + 1.0, y);
                          },
                      },
                      v_);
}

double ServiceDistribution::mean() const {
    return std::visit(overloaded{
                          [](const Exponential& e) { return 1.0 / e.rate; },
                          [](const Deterministic& d) { return d.value; },
                          [](const Uniform& u) { return u.upper / 2.0; },
                          [](const Gamma& g) { return g.shape * g.scale; },
                          [](const Erlang& e) { return e.stages * e.scale; },
                      },
                      v_);
}

bool ServiceDistribution::has_density() const noexcept { return !std::holds_alternative<Deterministic>(v_); }

double ServiceDistribution::shape() const noexcept {
    if (std::holds_alternative<Exponential>(v_)) return 1.0;
    if (auto g = std::get_if<Gamma>(&v_)) return g->shape;
    if (auto e = std::get_if<Erlang>(&v_)) return e->stages;
    return 0.0;
}

std::vector<double> ServiceDistribution::breakpoints() const {
    if (auto u = std::get_if<Uniform>(&v_)) return {u->upper};
    if (auto d = std::get_if<Deterministic>(&v_)) return {d->value};
    return {};
}

double ServiceDistribution::sample(Rng& rng) const {
    return std::visit(overloaded{
                          [&rng](const Exponential& e) { return std::exponential_distribution<double>(e.rate)(rng); },
                          [](const Deterministic& d) { return d.value; },
                          [&rng](const Uniform& u) { return std::uniform_real_distribution<double>(0.0, u.upper)(rng); },
                          [this, &rng](const auto&) {
                              const auto g = as_gamma(v_);
                              return std::gamma_distribution<double>(g.shape, g.scale)(rng);
                          },
                      },
                      v_);
}

bool ServiceDistribution::is_nbu() const {
    constexpr int kPoints = 100;
    constexpr double kTol = 1e-9;
    const double top = 5.0 * mean();
    const double step = top / (kPoints - 1);
    std::vector<double> bar(2 * kPoints);
    for (int i = 0; i < 2 * kPoints; ++i) bar[i] = ccdf(i * step);
    for (int i = 0; i < kPoints; ++i)
        for (int j = 0; j < kPoints; ++j)
            if (bar[i + j] > bar[i] * bar[j] + kTol) return false;
    return true;
}

std::string ServiceDistribution::name() const {
    std::ostringstream os;
    os.precision(12);
    std::visit(overloaded{
                   [&](const Exponential& e) { os << "exponential(rate=" << e.rate << ")"; },
                   [&](const Deterministic& d) { os << "deterministic(value=" << d.value << ")"; },
                   [&](const Uniform& u) { os << "uniform(0," << u.upper << ")"; },
                   [&](const Gamma& g) { os << "gamma(shape=" << g.shape << ",scale=" << g.scale << ")"; },
                   [&](const Erlang& e) { os << "erlang(stages=" << e.stages << ",scale=" << e.scale << ")"; },
               },
               v_);
    return os.str();
}

}  // namespace aoi
