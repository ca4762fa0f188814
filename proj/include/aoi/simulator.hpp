#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aoi/model.hpp"

namespace aoi {

struct InService {
    double generation;  // sampling time of the packet in service
    double completion;  // absolute completion time
};

struct SimState {
    double clock = 0.0;
    std::optional<InService> in_service;
    double last_generation = 0.0;  // U: generation time of the newest delivered packet

    double age() const noexcept { return clock - last_generation; }
};

enum class SimEventKind { Admit, Preempt, Discard, Complete };

struct SimEvent {
    SimEventKind kind;
    double time;
    // Packet in service after the event; nullopt when idle.
    std::optional<InService> after;
    // Packet in service before the event.
    std::optional<InService> before;
};

struct SimRequest {
    SimRequest(SystemConfig config_, double eval_time_, std::size_t replications_, std::uint64_t seed_);

    SystemConfig config;
    double eval_time;
    std::size_t replications;
    std::uint64_t seed;
};

// Independent generator for replication `index` of a run seeded with `seed`.
Rng substream(std::uint64_t seed, std::uint64_t index);

// One AoI sample at time t from an empty start. Events are appended to trace when given.
double simulate_aoi_at(const SystemConfig& config, double t, Rng& rng, std::vector<SimEvent>* trace = nullptr);

// One sample per replication, in replication order.
std::vector<double> simulate_samples(const SimRequest& request);

// Fraction of replications with age <= x, for each x.
std::vector<double> empirical_cdf(const SimRequest& request, std::span<const double> xs);
std::vector<double> empirical_cdf_from_samples(std::span<const double> samples, std::span<const double> xs);

}  // namespace aoi
