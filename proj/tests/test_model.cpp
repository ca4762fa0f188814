#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aoi/config.hpp"
#include "aoi/errors.hpp"
#include "aoi/model.hpp"

using namespace aoi;

namespace {

std::vector<ServiceDistribution> all_laws() {
    return {ServiceDistribution::exponential(1.2), ServiceDistribution::deterministic(1 / 1.2),
            ServiceDistribution::uniform(2 / 1.2),  ServiceDistribution::gamma(1.2, 1 / 1.44),
            ServiceDistribution::gamma(0.5, 2.0),   ServiceDistribution::erlang(5, 1 / 6.0)};
}

}  // namespace

TEST_CASE("rate_at evaluates each profile kind") {
    CHECK(rate_at(RateProfile::constant(1.8), 5.0) == 1.8);
    CHECK(rate_at(RateProfile::sinusoid(1.7, 1.0, 1.8), 0.0) == doctest::Approx(1.7));
    CHECK(rate_at(RateProfile::square_wave(1.5, 0.5, 3.0, 30.0), 4.0) == 0.5);
    CHECK(rate_at(RateProfile::square_wave(1.5, 0.5, 3.0, 30.0), 6.5) == 1.5);
    const auto tab = RateProfile::tabulated(0.0, 1.0, {1.0, 3.0, 2.0});
    CHECK(rate_at(tab, 0.5) == doctest::Approx(2.0));
    CHECK_THROWS_AS(rate_at(tab, 2.5), DomainError);
}

TEST_CASE("invalid rate profiles are rejected") {
    CHECK_THROWS_AS(RateProfile::sinusoid(0.5, 1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(RateProfile::constant(-1.0), ConfigError);
    CHECK_THROWS_AS(RateProfile::piecewise_constant({0.0, 2.0, 1.0}, {1.0, 1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(RateProfile::piecewise_constant({0.0, 1.0}, {1.0}), ConfigError);
}

TEST_CASE("rate_integral closed forms") {
    CHECK(rate_integral(RateProfile::constant(0.7), 0.0, 3.0) == doctest::Approx(2.1));
    const double a = 1.7, b = 1.0, w = 1.8, t = 4.3;
    const auto sin = RateProfile::sinusoid(a, b, w);
    CHECK(rate_integral(sin, 0.0, t) == doctest::Approx(a * t + b / w * (1 - std::cos(w * t))).epsilon(1e-13));
    CHECK(rate_integral(sin, 2.0, 2.0) == 0.0);
    CHECK_THROWS_AS(rate_integral(sin, 3.0, 2.0), DomainError);

    // composite Simpson oracle
    const int n = 20000;
    double simpson = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double wgt = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        simpson += wgt * rate_at(sin, t * i / n);
    }
    simpson *= t / n / 3;
    CHECK(std::abs(rate_integral(sin, 0.0, t) - simpson) < 1e-10);

    const auto sq = RateProfile::square_wave(1.5, 0.5, 3.0, 30.0);
    CHECK(rate_integral(sq, 2.0, 7.0) == doctest::Approx(1.5 * 1 + 0.5 * 3 + 1.5 * 1));
    const auto tab = RateProfile::tabulated(0.0, 1.0, {1.0, 3.0, 2.0});
    CHECK(rate_integral(tab, 0.0, 2.0) == doctest::Approx(2.0 + 2.5));
    CHECK(rate_integral(tab, 0.5, 1.5) == doctest::Approx(0.5 * (2.0 + 3.0) / 2 + 0.5 * (3.0 + 2.5) / 2));
}

TEST_CASE("rate_integral is additive") {
    const RateProfile profiles[] = {RateProfile::constant(2.0), RateProfile::sinusoid(1.8, 1.0, 0.8),
                                    RateProfile::square_wave(1.5, 0.5, 3.0, 50.0),
                                    RateProfile::tabulated(0.0, 0.5, {1, 2, 0.5, 3, 1, 1, 2, 0.1, 4, 2, 1})};
    for (const auto& p : profiles)
        for (auto [t0, t1, t2] : {std::array{0.0, 1.3, 4.9}, std::array{0.2, 2.2, 3.1}}) {
            const double lhs = rate_integral(p, t0, t1) + rate_integral(p, t1, t2);
            CHECK(std::abs(lhs - rate_integral(p, t0, t2)) < 1e-12);
        }
}

TEST_CASE("rate bounds dominate the rate") {
    const auto sq = RateProfile::square_wave(1.5, 0.5, 3.0, 30.0);
    const auto segs = sq.rate_bounds(1.0, 8.0);
    REQUIRE(segs.size() == 3);
    CHECK(segs[1].bound == 0.5);
    const auto sin = RateProfile::sinusoid(1.8, 1.0, 0.8);
    for (double t = 0; t < 10; t += 0.01) CHECK(rate_at(sin, t) <= sin.max_rate(0, 10));
}

TEST_CASE("service transforms and distribution functions") {
    const auto e = ServiceDistribution::exponential(1.2);
    CHECK(e.lst(0.0) == 1.0);
    CHECK(e.lst(1.2) == doctest::Approx(0.5));
    const auto d = ServiceDistribution::deterministic(1 / 1.2);
    CHECK(service_cdf(d, 0.5) == 0.0);
    CHECK(service_cdf(d, 1.0) == 1.0);
    CHECK_THROWS_AS(service_pdf(d, 0.5), UnsupportedOperation);
    CHECK_FALSE(d.has_density());
    const auto u = ServiceDistribution::uniform(2.0);
    CHECK(std::abs(u.lst(std::complex<double>(0.7, 0.3)) -
                   (1.0 - std::exp(-std::complex<double>(1.4, 0.6))) / std::complex<double>(1.4, 0.6)) < 1e-14);
    CHECK(std::abs(u.lst(std::complex<double>(1e-7, 0.0)) - 1.0) < 1e-6);
    const auto cdf_t = e.cdf_transform(std::complex<double>(1.0, 0.0));
    CHECK(cdf_t.real() == doctest::Approx(1.2 / 2.2));
}

TEST_CASE("service laws satisfy the distribution invariants") {
    for (const auto& law : all_laws()) {
        CAPTURE(law.name());
        CHECK(law.lst(0.0) == 1.0);
        CHECK(law.cdf(-1.0) == 0.0);
        double prev = 0.0;
        const double top = 10.0 * law.mean();
        for (int i = 0; i <= 1000; ++i) {
            const double v = law.cdf(top * i / 1000);
            CHECK(v >= prev);
            CHECK(v <= 1.0);
            prev = v;
        }
        CHECK(prev > 0.99);
        const double h = 1e-6;
        const double slope = (law.lst(h) - law.lst(-h)) / (2 * h);
        CHECK(std::abs(slope + law.mean()) < 1e-4);
        double last = 1.0;
        for (double s = 0.1; s < 5; s += 0.1) {
            CHECK(law.lst(s) < last);
            last = law.lst(s);
        }
        if (law.has_density()) {
            // integrated CDF against trapezoid of the CDF
            const double z = 2.0 * law.mean();
            const int n = 4000;
            double trap = 0.0;
            for (int i = 0; i <= n; ++i) trap += (i == 0 || i == n ? 0.5 : 1.0) * law.cdf(z * i / n);
            trap *= z / n;
            CHECK(law.integrated_cdf(z) == doctest::Approx(trap).epsilon(1e-5));
        }
    }
}

TEST_CASE("sampling reproduces means and CDFs") {
    Rng rng(42);
    CHECK(sample_service(ServiceDistribution::deterministic(0.75), rng) == 0.75);
    const double mu = 1.2;
    for (const auto& law : {ServiceDistribution::exponential(mu), ServiceDistribution::erlang(5, 1 / (5 * mu))}) {
        double sum = 0.0;
        const int n = 1000000;
        for (int i = 0; i < n; ++i) sum += law.sample(rng);
        CHECK(std::abs(sum / n - 1 / mu) < 0.01 / mu);
    }
    for (const auto& law : all_laws()) {
        if (!law.has_density()) continue;  // a point mass has no continuous CDF to band
        CAPTURE(law.name());
        std::vector<double> draws(100000);
        for (auto& v : draws) v = law.sample(rng);
        std::sort(draws.begin(), draws.end());
        double band = 0.0;
        for (std::size_t i = 0; i < draws.size(); i += 97) {
            const double emp = static_cast<double>(i + 1) / draws.size();
            band = std::max(band, std::abs(emp - law.cdf(draws[i])));
        }
        CHECK(band < 0.01);
    }
}

TEST_CASE("NBU predicate") {
    CHECK(is_nbu(ServiceDistribution::exponential(1.0)));
    CHECK(is_nbu(ServiceDistribution::erlang(5, 0.2)));
    CHECK_FALSE(is_nbu(ServiceDistribution::gamma(0.5, 1.0)));
    CHECK(is_nbu(ServiceDistribution::uniform(2.0)));
    CHECK(is_nbu(ServiceDistribution::deterministic(1.0)));
}

TEST_CASE("system config validation") {
    CHECK_THROWS_AS(SystemConfig(RateProfile::constant(1), ServiceDistribution::exponential(1), 1.5), ConfigError);
    CHECK_THROWS_AS(ServiceDistribution::exponential(0.0), ConfigError);
    CHECK_THROWS_AS(ServiceDistribution::erlang(0, 1.0), ConfigError);
}

TEST_CASE("grid function interpolation and integral") {
    const GridFunction g(1.0, 0.5, {0.0, 1.0, 4.0});
    CHECK(g(1.25) == doctest::Approx(0.5));
    CHECK(g(2.0) == doctest::Approx(4.0));
    CHECK(g.integral(1.0, 2.0) == doctest::Approx(0.25 + 1.25));
    CHECK_THROWS_AS(g(0.9), DomainError);
    CHECK_THROWS_AS(g(2.1), DomainError);
    CHECK_THROWS_AS(GridFunction(0.0, 0.0, {1.0, 2.0}), ConfigError);
}

TEST_CASE("system config from JSON") {
    const auto j = nlohmann::json::parse(R"({
        "rate": {"kind": "sinusoid", "params": {"base": 1.7, "amplitude": 1.0, "frequency": 1.8}},
        "service": {"kind": "erlang", "params": {"stages": 5, "scale": 0.1666666667}},
        "theta": 0.6})");
    const auto cfg = system_from_json(j);
    CHECK(cfg.theta == 0.6);
    CHECK(cfg.rate.rate_at(0.0) == doctest::Approx(1.7));
    CHECK(cfg.service.mean() == doctest::Approx(5 / 6.0));
    CHECK_THROWS_AS(rate_from_json(nlohmann::json::parse(R"({"kind": "bogus"})")), ConfigError);
    CHECK_THROWS_AS(service_from_json(nlohmann::json::parse(R"({"kind": "uniform", "params": {}})")), ConfigError);
    CHECK_THROWS_AS(
        service_from_json(nlohmann::json::parse(R"({"kind": "erlang", "params": {"stages": 2.5, "scale": 1}})")),
        ConfigError);
}
