#include "aoi/tv_solver.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <string>

#include "aoi/errors.hpp"
#include "parallel.hpp"

namespace aoi {

namespace {

// Lag terms whose weight falls below this are dropped.
constexpr double kNegligible = 1e-18;

void require_density(const SystemConfig& config) {
    if (!config.service.has_density())
        throw UnsupportedOperation("the time-varying solver needs a service density; " + config.service.name() +
                                   " has none (approximate it with a narrow uniform law)");
}

// Survival mass per lag panel: wbar[q] = integral of (1 - F) over [(q-1)h, qh], q >= 1.
std::vector<double> survival_panels(const ServiceDistribution& service, double h, std::size_t count) {
    std::vector<double> wbar(count + 1, 0.0);
    double prev = 0.0;
    for (std::size_t q = 1; q <= count; ++q) {
        const double cur = service.integrated_cdf(static_cast<double>(q) * h);
        wbar[q] = std::max(0.0, h - (cur - prev));
        prev = cur;
    }
    return wbar;
}

// Trapezoid weight of node j in the survival convolution ending at node k.
inline double survival_weight(const std::vector<double>& wbar, std::size_t k, std::size_t j) {
    if (j == k) return 0.5 * wbar[1];
    const std::size_t q = k - j;
    return j == 0 ? 0.5 * wbar[q] : 0.5 * (wbar[q] + wbar[q + 1]);
}

// Nodes s_k = u + k h on [u, u + x] with md[k] = M(s_k, s_k - u), the probability
// of being empty at s_k with the last completion generated after u.
struct Diagonal {
    double h = 0.0;
    std::vector<double> lam;  // lambda at nodes
    std::vector<double> cum;  // Lambda(u, s_k)
    std::vector<double> md;
};

// md is built panel by panel from the double integral of the completion kernel
//   int_{r-panel} int_{q <= r} a(q) e^{-theta Lambda(q,r)} f(r - q) dq dr
// with a(q) = lambda(q) [theta + (1-theta) M(q, inf)] averaged per q-panel. The
// f-part integrates exactly through second differences of the integrated CDF, so
// service laws concentrated well inside one panel stay accurate.
Diagonal diagonal(const SystemConfig& config, const IdleProbabilityCurve& idle, double u, double x,
                  double h_target) {
    const double theta = config.theta;
    const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(x / h_target - 1e-9)));
    Diagonal d;
    d.h = x / static_cast<double>(m);
    const double h = d.h;
    const double t_end = std::min(u + x, idle.horizon());
    auto node = [&](std::size_t k) { return k == m ? t_end : std::min(u + static_cast<double>(k) * h, t_end); };

    d.lam.resize(m + 1);
    d.cum.assign(m + 1, 0.0);
    std::vector<double> admit(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
        const double s = node(k);
        d.lam[k] = config.rate.rate_at(s);
        if (k > 0) d.cum[k] = d.cum[k - 1] + config.rate.integral(node(k - 1), s);
        admit[k] = d.lam[k] * (theta + (1.0 - theta) * idle(s));
    }

    // second[n] = int over the panel pair of f against a hat of height h at lag n h.
    std::vector<double> integ(m + 2, 0.0), second(m + 1), tail(m + 1);
    for (std::size_t n = 1; n <= m + 1; ++n) integ[n] = config.service.integrated_cdf(static_cast<double>(n) * h);
    second[0] = integ[1];
    for (std::size_t n = 1; n <= m; ++n) second[n] = std::max(0.0, integ[n + 1] - 2.0 * integ[n] + integ[n - 1]);
    for (std::size_t n = 0; n <= m; ++n) tail[n] = config.service.ccdf(static_cast<double>(n) * h);

    std::vector<double> mid_cum(m + 1, 0.0), mid_admit(m + 1, 0.0);
    for (std::size_t j = 1; j <= m; ++j) {
        mid_cum[j] = 0.5 * (d.cum[j - 1] + d.cum[j]);
        mid_admit[j] = 0.5 * (admit[j - 1] + admit[j]);
    }

    d.md.assign(m + 1, 0.0);
    for (std::size_t k = 1; k <= m; ++k) {
        double panel = 0.0;
        for (std::size_t j = k; j >= 1; --j) {
            const std::size_t lag = k - j;
            const double decay = std::exp(-theta * (mid_cum[k] - mid_cum[j]));
            if (lag >= 1 && decay * tail[lag - 1] < kNegligible) break;
            panel += mid_admit[j] * decay * second[lag];
        }
        d.md[k] = d.md[k - 1] * std::exp(-(d.cum[k] - d.cum[k - 1])) + panel * std::exp(-(d.cum[k] - mid_cum[k]));
    }
    return d;
}

double check_probability(double v, const char* what) {
    if (!std::isfinite(v)) throw ConvergenceError(std::string(what) + " is not finite", v, 0);
    return v;
}

}  // namespace

void SolverSettings::validate() const {
    if (horizon < 0.0 || !std::isfinite(horizon)) throw ConfigError("solver horizon must be nonnegative");
    if (grid_n == 1) throw ConfigError("solver grid needs at least 2 intervals");
    if (!(max_step > 0.0)) throw ConfigError("solver max_step must be positive");
    if (!(etol > 0.0)) throw ConfigError("solver etol must be positive");
    if (ite_max < 1) throw ConfigError("solver ite_max must be at least 1");
}

double SolverSettings::step_for(double T) const {
    if (grid_n > 0) return T / static_cast<double>(grid_n);
    return T / std::ceil(T / max_step - 1e-9);
}

IdleProbabilityCurve solve_idle_prob(const SystemConfig& config, const SolverSettings& settings) {
    settings.validate();
    const double T = settings.horizon;
    if (!(T > 0.0)) throw ConfigError("idle probability needs a positive horizon");
    const double h = settings.step_for(T);
    const auto n = static_cast<std::size_t>(std::llround(T / h));
    const double theta = config.theta;

    std::vector<double> lam(n + 1), cum(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = std::min(static_cast<double>(i) * h, T);
        lam[i] = config.rate.rate_at(t);
        if (i > 0) cum[i] = cum[i - 1] + config.rate.integral(static_cast<double>(i - 1) * h, t);
    }
    const auto wbar = survival_panels(config.service, h, n);

    // M(t) = 1 - int_0^t lambda(r) [theta + (1-theta) M(r)] e^{-theta Lambda(r,t)} (1 - F(t-r)) dr
    std::vector<double> w(n + 1, 1.0), next(n + 1, 1.0);
    auto history = [&](const std::vector<double>& src, std::size_t k) {
        double acc = 0.0;
        for (std::size_t j = k; j-- > 0;) {
            const double decay = std::exp(-theta * (cum[k] - cum[j]));
            if (decay * wbar[k - j] < kNegligible * h) break;
            acc += survival_weight(wbar, k, j) * lam[j] * (theta + (1.0 - theta) * src[j]) * decay;
        }
        return acc;
    };

    const bool gauss_seidel = settings.sweep == SweepMode::GaussSeidel;
    double residual = 0.0;
    int iter = 0;
    while (true) {
        ++iter;
        residual = 0.0;
        if (gauss_seidel) {
            for (std::size_t k = 1; k <= n; ++k) {
                const double c = survival_weight(wbar, k, k) * lam[k];
                const double v = (1.0 - history(w, k) - c * theta) / (1.0 + c * (1.0 - theta));
                residual = std::max(residual, std::abs(v - w[k]));
                w[k] = v;
            }
        } else {
            for (std::size_t k = 1; k <= n; ++k) {
                const double c = survival_weight(wbar, k, k) * lam[k];
                next[k] = 1.0 - history(w, k) - c * (theta + (1.0 - theta) * w[k]);
                residual = std::max(residual, std::abs(next[k] - w[k]));
            }
            w.swap(next);
        }
        if (!std::isfinite(residual)) throw ConvergenceError("idle probability iteration diverged", residual, iter);
        // theta = 1 leaves no unknown under the integral: one pass is exact.
        if (residual <= settings.etol || theta == 1.0) break;
        if (iter >= settings.ite_max)
            throw ConvergenceError("idle probability did not reach etol within ite_max sweeps", residual, iter);
    }
    IdleProbabilityCurve curve{GridFunction(0.0, h, std::move(w)), iter, theta == 1.0 ? 0.0 : residual};
    return curve;
}

double kernel_gz(const SystemConfig& config, const IdleProbabilityCurve& idle, double t, double y) {
    if (y < 0.0 || t < y) throw DomainError("kernel_gz needs t >= y >= 0");
    require_density(config);
    if (y == 0.0) return 0.0;
    const double theta = config.theta;
    auto integrand = [&](double s) {
        const double r = t - s;
        const double f = config.service.pdf(s);
        if (f == 0.0) return 0.0;
        const double admit = config.rate.rate_at(r) * (theta + (1.0 - theta) * idle(r));
        return f * admit * std::exp(-theta * config.rate.integral(r, t));
    };

    std::vector<double> cuts{0.0, y};
    for (double bp : config.service.breakpoints())
        if (bp > 0.0 && bp < y) cuts.push_back(bp);
    if (auto pc = std::get_if<PiecewiseConstantRate>(&config.rate.variant()))
        for (double start : pc->starts)
            if (t - start > 0.0 && t - start < y) cuts.push_back(t - start);
    for (double c = 1.0; c < y; c += 1.0) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] <= 0.0) continue;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, cuts[i], cuts[i + 1], 15,
                                                                                1e-12);
    }
    return std::max(0.0, total);
}

double m_tx(const SystemConfig& config, const IdleProbabilityCurve& idle, double t, double x) {
    if (t < 0.0 || x < 0.0) throw DomainError("m_tx needs t, x >= 0");
    if (t < x) return idle(t);
    require_density(config);
    if (x == 0.0) return 0.0;
    const auto d = diagonal(config, idle, t - x, x, idle.values.step());
    return d.md.back();
}

namespace {

double phi_query(const SystemConfig& config, const IdleProbabilityCurve& idle, const SolverSettings& settings,
                 double t, double x) {
    if (t < 0.0 || x < 0.0) throw DomainError("aoi_cdf_tv needs t, x >= 0");
    if (x >= t) return 1.0;
    require_density(config);
    if (x == 0.0) return 0.0;
    if (t > idle.horizon() * (1.0 + 1e-12))
        throw DomainError("query time " + std::to_string(t) + " lies beyond the idle curve horizon");

    const double theta = config.theta;
    const auto d = diagonal(config, idle, t - x, x, idle.values.step());
    const double h = d.h;
    const std::size_t m = d.md.size() - 1;
    const auto wbar = survival_panels(config.service, h, m);

    // Phi(u + tau, tau) = M(u + tau, tau)
    //   + int_0^tau lambda [theta Phi + (1-theta) M] (1 - F(tau - s)) e^{-theta Lambda} ds
    std::vector<double> w(m + 1, 1.0), next(m + 1, 1.0);
    w[0] = next[0] = d.md[0];
    auto history = [&](const std::vector<double>& src, std::size_t k) {
        double acc = 0.0;
        for (std::size_t j = k; j-- > 0;) {
            const double decay = std::exp(-theta * (d.cum[k] - d.cum[j]));
            if (decay * wbar[k - j] < kNegligible * h) break;
            acc += survival_weight(wbar, k, j) * d.lam[j] * (theta * src[j] + (1.0 - theta) * d.md[j]) * decay;
        }
        return acc;
    };

    const bool gauss_seidel = settings.sweep == SweepMode::GaussSeidel;
    double residual = 0.0;
    int iter = 0;
    while (true) {
        ++iter;
        residual = 0.0;
        for (std::size_t k = 1; k <= m; ++k) {
            const double c = survival_weight(wbar, k, k) * d.lam[k];
            const double fixed = d.md[k] + c * (1.0 - theta) * d.md[k];
            double v;
            if (gauss_seidel) {
                v = (fixed + history(w, k)) / (1.0 - c * theta);
                residual = std::max(residual, std::abs(v - w[k]));
                w[k] = v;
            } else {
                v = fixed + history(w, k) + c * theta * w[k];
                residual = std::max(residual, std::abs(v - w[k]));
                next[k] = v;
            }
        }
        if (!gauss_seidel) w.swap(next);
        if (!std::isfinite(residual)) throw ConvergenceError("AoI iteration diverged", residual, iter);
        // theta = 0 leaves no unknown under the integral: one pass is exact.
        if (residual <= settings.etol || theta == 0.0) break;
        if (iter >= settings.ite_max)
            throw ConvergenceError("AoI iteration did not reach etol within ite_max sweeps", residual, iter);
    }
    return check_probability(w[m], "AoI distribution");
}

}  // namespace

double aoi_cdf_tv(const SystemConfig& config, double t, double x, const SolverSettings& settings) {
    if (t < 0.0 || x < 0.0) throw DomainError("aoi_cdf_tv needs t, x >= 0");
    if (x >= t) return 1.0;
    SolverSettings s = settings;
    s.horizon = t;
    const auto idle = solve_idle_prob(config, s);
    return phi_query(config, idle, s, t, x);
}

double aoi_cdf_negligible(const RateProfile& profile, double t, double x) {
    if (t < 0.0 || x < 0.0) throw DomainError("aoi_cdf_negligible needs t, x >= 0");
    if (t <= x) return 1.0;
    return -std::expm1(-profile.integral(t - x, t));
}

double mean_aoi_negligible(const RateProfile& profile, double t) {
    if (t < 0.0) throw DomainError("mean_aoi_negligible needs t >= 0");
    if (t == 0.0) return 0.0;
    auto survival = [&](double x) { return std::exp(-profile.integral(t - x, t)); };
    double total = 0.0;
    const int pieces = static_cast<int>(std::ceil(t));
    for (int i = 0; i < pieces; ++i) {
        const double a = t * i / pieces;
        const double b = t * (i + 1) / pieces;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(survival, a, b, 15, 1e-13);
    }
    return total;
}

TimeVaryingSolver::TimeVaryingSolver(SystemConfig config, SolverSettings settings)
    : config_(std::move(config)), settings_(settings), idle_(solve_idle_prob(config_, settings_)) {}

double TimeVaryingSolver::cdf(double t, double x) const { return phi_query(config_, idle_, settings_, t, x); }

double TimeVaryingSolver::m_tx(double t, double x) const { return aoi::m_tx(config_, idle_, t, x); }

std::vector<double> TimeVaryingSolver::cdf_many(double t, std::span<const double> xs) const {
    std::vector<double> out(xs.size());
    detail::parallel_for(xs.size(), [&](std::size_t i) { out[i] = cdf(t, xs[i]); });
    return out;
}

}  // namespace aoi
