#include "greenbs/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "greenbs/random.hpp"

namespace greenbs {

TrafficSpec TrafficSpec::from_total(std::span<const double> total_rate, double handoff_fraction,
                                    double mean_holding_min) {
    if (!(handoff_fraction >= 0.0 && handoff_fraction <= 1.0)) {
        throw std::invalid_argument("handoff fraction must lie in [0, 1]");
    }
    TrafficSpec spec;
    spec.mean_holding_min = mean_holding_min;
    for (double r : total_rate) {
        spec.new_rate.push_back(r * (1.0 - handoff_fraction));
        spec.handoff_rate.push_back(r * handoff_fraction);
    }
    return spec;
}

void TrafficSpec::validate(const Horizon& horizon) const {
    if (new_rate.size() != horizon.periods() || handoff_rate.size() != horizon.periods()) {
        throw std::invalid_argument("traffic rate traces must have one entry per period");
    }
    auto bad = [](double r) { return !std::isfinite(r) || r < 0.0; };
    if (std::any_of(new_rate.begin(), new_rate.end(), bad) ||
        std::any_of(handoff_rate.begin(), handoff_rate.end(), bad)) {
        throw std::invalid_argument("arrival rates must be finite and non-negative");
    }
    if (!(mean_holding_min > 0.0) || !std::isfinite(mean_holding_min)) {
        throw std::invalid_argument("mean holding time must be positive");
    }
}

void CacConfig::validate() const {
    if (channels < 1 || threshold < 1 || threshold > channels) {
        throw std::invalid_argument("guard-channel threshold " + std::to_string(threshold) +
                                    " must lie in [1, " + std::to_string(channels) + "]");
    }
}

void QosStats::finalize() {
    new_blocking_prob = offered_new == 0 ? 0.0
        : static_cast<double>(blocked_new) / static_cast<double>(offered_new);
    handoff_dropping_prob = offered_handoff == 0 ? 0.0
        : static_cast<double>(dropped_handoff) / static_cast<double>(offered_handoff);
}

namespace {

// Uniformized chain: every event draws one uniform that picks a slot
// [new arrival | handoff arrival | departure | dummy]. The slot layout only
// depends on the caps, so runs that share a seed see the same event stream.
class GuardChannelChain {
public:
    GuardChannelChain(const TrafficSpec& spec, const CacConfig& cac, const SimulationOptions& opt,
                      std::uint64_t seed)
        : spec_(spec), cac_(cac), rng_(seed) {
        const double max_new = *std::max_element(spec.new_rate.begin(), spec.new_rate.end());
        const double max_handoff =
            *std::max_element(spec.handoff_rate.begin(), spec.handoff_rate.end());
        new_cap_ = opt.new_rate_cap > 0.0 ? opt.new_rate_cap : max_new;
        handoff_cap_ = opt.handoff_rate_cap > 0.0 ? opt.handoff_rate_cap : max_handoff;
        if (new_cap_ < max_new || handoff_cap_ < max_handoff) {
            throw std::invalid_argument("uniformization cap below the traffic's peak arrival rate");
        }
        death_cap_ = cac.channels / spec.mean_holding_min;
        total_rate_ = new_cap_ + handoff_cap_ + death_cap_;
    }

    double next_gap() { return exponential(rng_, total_rate_); }

    // Applies one event at rates of `period`; counts into `qos` when given.
    void step(std::size_t period, QosStats* qos) {
        double v = uniform01(rng_) * total_rate_;
        if (v < new_cap_) {
            if (v < spec_.new_rate[period]) {
                const bool admit = active_ < cac_.threshold;
                if (admit) ++active_;
                if (qos) {
                    ++qos->offered_new;
                    if (!admit) ++qos->blocked_new;
                }
            }
            return;
        }
        v -= new_cap_;
        if (v < handoff_cap_) {
            if (v < spec_.handoff_rate[period]) {
                const bool admit = active_ < cac_.channels;
                if (admit) ++active_;
                if (qos) {
                    ++qos->offered_handoff;
                    if (!admit) ++qos->dropped_handoff;
                }
            }
            return;
        }
        v -= handoff_cap_;
        if (v < active_ / spec_.mean_holding_min) --active_;
    }

    int active() const { return active_; }

private:
    const TrafficSpec& spec_;
    const CacConfig& cac_;
    std::mt19937_64 rng_;
    double new_cap_ = 0.0;
    double handoff_cap_ = 0.0;
    double death_cap_ = 0.0;
    double total_rate_ = 0.0;
    int active_ = 0;
};

} // namespace

TrafficRun simulate_traffic(const TrafficSpec& spec, const CacConfig& cac,
                            const Horizon& horizon, std::uint64_t seed,
                            const SimulationOptions& options) {
    spec.validate(horizon);
    cac.validate();
    if (options.warmup_min < 0.0) {
        throw std::invalid_argument("warm-up time must be non-negative");
    }

    GuardChannelChain chain(spec, cac, options, seed);
    const std::size_t periods = horizon.periods();
    const double period_min = horizon.period_length_min();
    const double end = static_cast<double>(periods) * period_min;

    double now = -options.warmup_min;
    double next = now + chain.next_gap();
    while (next < 0.0) {
        chain.step(0, nullptr);
        now = next;
        next = now + chain.next_gap();
    }

    TrafficRun run;
    run.occupancy.assign(periods, 0.0);
    now = 0.0;
    std::size_t period = 0;
    while (true) {
        // accumulate occupancy over [now, min(next, end)), split at period edges
        const double stop = std::min(next, end);
        while (now < stop) {
            const double edge = static_cast<double>(period + 1) * period_min;
            const double upto = std::min(stop, edge);
            run.occupancy[period] += chain.active() * (upto - now);
            now = upto;
            if (now >= edge && period + 1 < periods) ++period;
        }
        if (next >= end) break;
        const auto event_period =
            std::min(periods - 1, static_cast<std::size_t>(next / period_min));
        chain.step(event_period, &run.qos);
        next += chain.next_gap();
    }
    for (double& area : run.occupancy) area /= period_min;
    run.qos.finalize();
    return run;
}

TrafficRun simulate_replications(const TrafficSpec& spec, const CacConfig& cac,
                                 const Horizon& horizon, int replications,
                                 std::uint64_t seed, const SimulationOptions& options) {
    if (replications < 1) {
        throw std::invalid_argument("need at least one replication");
    }
    TrafficRun total;
    total.occupancy.assign(horizon.periods(), 0.0);
    for (int r = 0; r < replications; ++r) {
        const TrafficRun run = simulate_traffic(spec, cac, horizon,
                                                derive_seed(seed, static_cast<std::uint64_t>(r)),
                                                options);
        for (std::size_t t = 0; t < run.occupancy.size(); ++t) total.occupancy[t] += run.occupancy[t];
        total.qos.offered_new += run.qos.offered_new;
        total.qos.offered_handoff += run.qos.offered_handoff;
        total.qos.blocked_new += run.qos.blocked_new;
        total.qos.dropped_handoff += run.qos.dropped_handoff;
    }
    for (double& v : total.occupancy) v /= replications;
    total.qos.finalize();
    return total;
}

std::vector<double> expected_occupancy_trace(const TrafficSpec& spec, const CacConfig& cac,
                                             const Horizon& horizon, int replications,
                                             std::uint64_t seed, const SimulationOptions& options) {
    if (replications == 1) {
        return simulate_traffic(spec, cac, horizon, derive_seed(seed, 0), options).occupancy;
    }
    return simulate_replications(spec, cac, horizon, replications, seed, options).occupancy;
}

GuardChannelMetrics analytic_guard_channel(double new_rate, double handoff_rate,
                                           double mean_holding_min, const CacConfig& cac) {
    cac.validate();
    if (new_rate < 0.0 || handoff_rate < 0.0 || !(mean_holding_min > 0.0)) {
        throw std::invalid_argument("analytic_guard_channel: invalid rates or holding time");
    }
    const auto states = static_cast<std::size_t>(cac.channels) + 1;
    std::vector<double> weight(states, 0.0);
    weight[0] = 1.0;
    for (std::size_t k = 1; k < states; ++k) {
        const double birth = (static_cast<int>(k) - 1 < cac.threshold) ? new_rate + handoff_rate
                                                                       : handoff_rate;
        weight[k] = weight[k - 1] * birth * mean_holding_min / static_cast<double>(k);
        if (weight[k] > 1e250) {
            for (std::size_t j = 0; j <= k; ++j) weight[j] *= 1e-250;
        }
    }
    double norm = 0.0;
    for (double w : weight) norm += w;

    GuardChannelMetrics m;
    m.distribution.resize(states);
    for (std::size_t k = 0; k < states; ++k) {
        m.distribution[k] = weight[k] / norm;
        m.mean_occupancy += static_cast<double>(k) * m.distribution[k];
        if (static_cast<int>(k) >= cac.threshold) m.blocking += m.distribution[k];
    }
    m.dropping = m.distribution.back();
    return m;
}

} // namespace greenbs
