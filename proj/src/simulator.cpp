#include "aoi/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aoi/errors.hpp"
#include "parallel.hpp"

namespace aoi {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void record(std::vector<SimEvent>* trace, SimEventKind kind, double time, const std::optional<InService>& before,
            const std::optional<InService>& after) {
    if (trace) trace->push_back({kind, time, after, before});
}

}  // namespace

SimRequest::SimRequest(SystemConfig config_, double eval_time_, std::size_t replications_, std::uint64_t seed_)
    : config(std::move(config_)), eval_time(eval_time_), replications(replications_), seed(seed_) {
    if (replications < 1) throw ConfigError("simulation needs at least one replication");
    if (!(eval_time >= 0.0) || !std::isfinite(eval_time)) throw ConfigError("evaluation time must be >= 0");
}

Rng substream(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t a = splitmix64(seed);
    const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32)};
    return Rng(seq);
}

double simulate_aoi_at(const SystemConfig& config, double t, Rng& rng, std::vector<SimEvent>* trace) {
    if (!(t >= 0.0)) throw DomainError("simulation time must be nonnegative");
    SimState st;
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto complete_until = [&](double limit) {
        if (st.in_service && st.in_service->completion <= limit) {
            const auto before = st.in_service;
            st.clock = before->completion;
            st.last_generation = before->generation;
            st.in_service.reset();
            record(trace, SimEventKind::Complete, st.clock, before, st.in_service);
        }
    };

    auto arrival = [&](double tau) {
        complete_until(tau);
        st.clock = tau;
        const auto before = st.in_service;
        if (!st.in_service) {
            st.in_service = InService{tau, tau + config.service.sample(rng)};
            record(trace, SimEventKind::Admit, tau, before, st.in_service);
        } else if (config.theta > 0.0 && unit(rng) < config.theta) {
            st.in_service = InService{tau, tau + config.service.sample(rng)};
            record(trace, SimEventKind::Preempt, tau, before, st.in_service);
        } else {
            record(trace, SimEventKind::Discard, tau, before, st.in_service);
        }
    };

    for (const auto& seg : config.rate.rate_bounds(0.0, t)) {
        if (!std::isfinite(seg.bound)) throw ConfigError("arrival rate is unbounded on the simulation horizon");
        if (seg.bound <= 0.0) continue;
        std::exponential_distribution<double> gap(seg.bound);
        double tau = seg.start;
        while (true) {
            tau += gap(rng);
            if (tau > seg.end) break;
            if (unit(rng) * seg.bound <= config.rate.rate_at(tau)) arrival(tau);
        }
    }
    complete_until(t);
    st.clock = t;
    return st.age();
}

std::vector<double> simulate_samples(const SimRequest& request) {
    std::vector<double> out(request.replications);
    detail::parallel_for(request.replications, [&](std::size_t i) {
        Rng rng = substream(request.seed, i);
        out[i] = simulate_aoi_at(request.config, request.eval_time, rng);
    });
    return out;
}

std::vector<double> empirical_cdf_from_samples(std::span<const double> samples, std::span<const double> xs) {
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(xs.size());
    const double n = static_cast<double>(sorted.size());
    for (double x : xs) {
        const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
        out.push_back(n > 0 ? static_cast<double>(count) / n : std::numeric_limits<double>::quiet_NaN());
    }
    return out;
}

std::vector<double> empirical_cdf(const SimRequest& request, std::span<const double> xs) {
    const auto samples = simulate_samples(request);
    return empirical_cdf_from_samples(samples, xs);
}

}  // namespace aoi
