#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "greenbs/units.hpp"

namespace greenbs {

/// Piecewise-constant Poisson arrival rates (connections per minute) with
/// exponential holding times.
struct TrafficSpec {
    std::vector<double> new_rate;
    std::vector<double> handoff_rate;
    double mean_holding_min = 10.0;

    /// Splits a total arrival-rate profile into new and handoff streams.
    static TrafficSpec from_total(std::span<const double> total_rate,
                                  double handoff_fraction = 0.3,
                                  double mean_holding_min = 10.0);

    void validate(const Horizon& horizon) const;
};

/// Guard-channel admission: new connections only while occupancy < threshold,
/// handoffs while occupancy < channels.
struct CacConfig {
    int channels = 25;
    int threshold = 25;

    void validate() const;
};

struct QosStats {
    double new_blocking_prob = 0.0;
    double handoff_dropping_prob = 0.0;
    std::uint64_t offered_new = 0;
    std::uint64_t offered_handoff = 0;
    std::uint64_t blocked_new = 0;
    std::uint64_t dropped_handoff = 0;

    /// Recomputes the two ratios from the counters (0 when nothing offered).
    void finalize();
};

struct SimulationOptions {
    /// Run time before t = 0 at the first period's rates; not recorded.
    double warmup_min = 0.0;
    /// Uniformization caps for the arrival streams. Runs sharing a seed and
    /// caps are coupled: occupancy is pathwise monotone in the threshold and
    /// in the arrival rates. Zero means "use the largest rate in the spec".
    double new_rate_cap = 0.0;
    double handoff_rate_cap = 0.0;
};

struct TrafficRun {
    /// Time-averaged active connections per period.
    std::vector<double> occupancy;
    QosStats qos;
};

TrafficRun simulate_traffic(const TrafficSpec& spec, const CacConfig& cac,
                            const Horizon& horizon, std::uint64_t seed,
                            const SimulationOptions& options = {});

/// Replication average of `simulate_traffic`; replication r uses
/// derive_seed(seed, r). QoS counters are pooled over replications.
TrafficRun simulate_replications(const TrafficSpec& spec, const CacConfig& cac,
                                 const Horizon& horizon, int replications,
                                 std::uint64_t seed, const SimulationOptions& options = {});

std::vector<double> expected_occupancy_trace(const TrafficSpec& spec, const CacConfig& cac,
                                             const Horizon& horizon, int replications,
                                             std::uint64_t seed,
                                             const SimulationOptions& options = {});

struct GuardChannelMetrics {
    double blocking = 0.0;
    double dropping = 0.0;
    double mean_occupancy = 0.0;
    std::vector<double> distribution; // stationary probability of 0..channels
};

/// Stationary solution of the guard-channel birth-death chain.
GuardChannelMetrics analytic_guard_channel(double new_rate, double handoff_rate,
                                           double mean_holding_min, const CacConfig& cac);

} // namespace greenbs
