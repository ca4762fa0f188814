#include "aoi/stationary.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "aoi/errors.hpp"

namespace aoi {

namespace {

using C = std::complex<double>;

constexpr double kQuadTol = 1e-13;

bool near_equal_rates(double lambda, double mu) { return std::abs(lambda - mu) < 1e-6 * std::max(lambda, mu); }

void check_rates(double lambda, double mu) {
    if (!(lambda > 0.0) || !(mu > 0.0)) throw ConfigError("closed forms need lambda, mu > 0");
}

// Adaptive Gauss-Kronrod over [a, b] split at the given interior cut points.
template <class F>
double integrate(F&& f, double a, double b, std::vector<double> cuts) {
    if (b <= a) return 0.0;
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = std::max(a, cuts[i]);
        const double hi = std::min(b, cuts[i + 1]);
        if (hi <= lo) continue;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 6, kQuadTol);
    }
    return total;
}

std::vector<double> interior(const std::vector<double>& points, double a, double b) {
    std::vector<double> out;
    for (double p : points)
        if (p > a && p < b) out.push_back(p);
    return out;
}

// M(x) for theta = 0: M_inf * lambda * int_0^x F(s) e^{-lambda (x - s)} ds.
double m_x_no_preemption(const StationaryModel& model, double minf, double x) {
    const double lam = model.lambda;
    auto f = [&](double s) { return model.service.cdf(s) * std::exp(-lam * (x - s)); };
    return minf * lam * integrate(f, 0.0, x, interior(model.service.breakpoints(), 0.0, x));
}

std::vector<double> convolution_cuts(const StationaryModel& model, double x) {
    std::vector<double> cuts;
    for (double bp : model.service.breakpoints()) {
        cuts.push_back(bp);
        cuts.push_back(x - bp);
    }
    return interior(cuts, 0.0, x);
}

double cdf_no_preemption(const StationaryModel& model, double x) {
    const double minf = m_infinity(model);
    auto g = [&](double s) { return m_x_no_preemption(model, minf, s) * model.service.ccdf(x - s); };
    return m_x_no_preemption(model, minf, x) + model.lambda * integrate(g, 0.0, x, convolution_cuts(model, x));
}

double pdf_no_preemption(const StationaryModel& model, double x) {
    const double minf = m_infinity(model);
    const double lam = model.lambda;
    double conv;
    if (auto d = std::get_if<Deterministic>(&model.service.variant())) {
        conv = x > d->value ? m_x_no_preemption(model, minf, x - d->value) : 0.0;
    } else {
        auto g = [&](double s) { return m_x_no_preemption(model, minf, s) * model.service.pdf(x - s); };
        conv = integrate(g, 0.0, x, convolution_cuts(model, x));
    }
    return lam * minf * model.service.cdf(x) - lam * conv;
}

double checked_inversion(const LaplaceTransform& transform, double x, const InversionSettings& inv, bool is_cdf) {
    const double v = invert_laplace(transform, x, inv);
    if (is_cdf && (v < -1e-3 || v > 1.0 + 1e-3))
        throw InversionError("inverted CDF " + std::to_string(v) + " at x = " + std::to_string(x) +
                             " lies outside [0, 1]");
    if (!is_cdf && v < -1e-3)
        throw InversionError("inverted density " + std::to_string(v) + " at x = " + std::to_string(x) +
                             " is negative");
    return v;
}

}  // namespace

StationaryModel::StationaryModel(double lambda_, ServiceDistribution service_, double theta_)
    : lambda(lambda_), service(std::move(service_)), theta(theta_) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("stationary arrival rate must be positive");
    if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("theta must lie in [0, 1]");
}

double m_infinity(const StationaryModel& model) {
    const double th = model.theta;
    if (th == 0.0) return 1.0 / (1.0 + model.lambda * model.service.mean());
    const double ft = model.service.lst(model.lambda * th);
    return th * ft / (1.0 - (1.0 - th) * ft);
}

double m_x_stationary(const StationaryModel& model, double x) {
    if (x < 0.0) throw DomainError("m_x_stationary needs x >= 0");
    if (x == 0.0) return 0.0;
    const double minf = m_infinity(model);
    if (model.theta == 0.0) return m_x_no_preemption(model, minf, x);
    if (!model.service.has_density())
        throw UnsupportedOperation("m_x_stationary with preemption needs a service density");
    const double lam = model.lambda;
    const double th = model.theta;
    auto g = [&](double s) {
        const double f = model.service.pdf(s);
        if (f == 0.0) return 0.0;
        // e^{-lam th s} - e^{lam (s - th s - x)}, factored to keep precision near s = x
        return f * std::exp(-lam * th * s) * -std::expm1(-lam * (x - s));
    };
    // Geometric cuts resolve densities that are singular at zero (Gamma shape near 1).
    std::vector<double> cuts = model.service.breakpoints();
    for (double c = 1e-8; c < x; c *= 4.0) cuts.push_back(c);
    return (th + (1.0 - th) * minf) * integrate(g, 0.0, x, interior(cuts, 0.0, x));
}

std::complex<double> aoi_lst(const StationaryModel& model, std::complex<double> s) {
    const double th = model.theta;
    if (th == 0.0) throw UnsupportedOperation("aoi_lst is defined for theta > 0; use the convolution path");
    const double lam = model.lambda;
    const C shifted = lam * th + s;
    const C ft = model.service.lst(shifted);
    const double f0 = model.service.lst(lam * th);
    const C sm = lam / (lam + s) * th * ft / (1.0 - (1.0 - th) * f0);
    const C k = lam * (1.0 - ft) / shifted;
    return sm * (1.0 + (1.0 - th) * k) / (1.0 - th * k);
}

double aoi_cdf_stationary(const StationaryModel& model, double x, const InversionSettings& inv) {
    if (x < 0.0) throw DomainError("aoi_cdf_stationary needs x >= 0");
    if (x == 0.0) return 0.0;
    if (model.theta == 0.0) return cdf_no_preemption(model, x);
    return checked_inversion([&](C s) { return aoi_lst(model, s) / s; }, x, inv, true);
}

double aoi_pdf_stationary(const StationaryModel& model, double x, const InversionSettings& inv) {
    if (x < 0.0) throw DomainError("aoi_pdf_stationary needs x >= 0");
    if (x == 0.0) return 0.0;
    if (model.theta == 0.0) return pdf_no_preemption(model, x);
    return checked_inversion([&](C s) { return aoi_lst(model, s); }, x, inv, false);
}

double closed_form_mm11(double lambda, double mu, double x) {
    check_rates(lambda, mu);
    if (x <= 0.0) return 0.0;
    if (near_equal_rates(lambda, mu)) {
        const double y = mu * x;
        return 1.0 - std::exp(-y) * (1.0 + y + 0.25 * y * y);
    }
    const double d = lambda - mu;
    const double t1 = mu * mu * mu / ((lambda + mu) * d * d) * std::exp(-lambda * x);
    const double t2 = lambda / (lambda + mu) *
                      ((lambda * lambda - lambda * mu - mu * mu) / (d * d) + lambda * mu * x / d) *
                      std::exp(-mu * x);
    return 1.0 - t1 - t2;
}

double closed_form_md11(double lambda, double mu, double x) {
    check_rates(lambda, mu);
    if (x < 1.0 / mu) return 0.0;
    if (x < 2.0 / mu) return (lambda * mu * x - lambda) / (lambda + mu);
    return 1.0 - mu / (lambda + mu) * std::exp(-lambda * x + 2.0 * lambda / mu);
}

double closed_form_mm11_preemptive(double lambda, double mu, double x) {
    check_rates(lambda, mu);
    if (x <= 0.0) return 0.0;
    if (near_equal_rates(lambda, mu)) return 1.0 - (1.0 + mu * x) * std::exp(-mu * x);
    return 1.0 - lambda / (lambda - mu) * std::exp(-mu * x) + mu / (lambda - mu) * std::exp(-lambda * x);
}

bool check_dominance(double lambda, double mu, std::span<const double> xs) {
    for (double x : xs)
        if (closed_form_mm11_preemptive(lambda, mu, x) < closed_form_mm11(lambda, mu, x) - 1e-12) return false;
    return true;
}

}  // namespace aoi
