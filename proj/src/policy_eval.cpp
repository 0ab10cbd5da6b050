#include "greenbs/policy_eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace greenbs {

namespace {

constexpr double kReplayTol = 1e-6;

void check_day(const RealizedDay& day, std::size_t periods) {
    if (day.price.size() != periods || day.renewable.size() != periods ||
        day.consumption.size() != periods) {
        throw std::invalid_argument("realized day '" + day.label + "' does not span the horizon");
    }
}

double average(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

} // namespace

RealizedDay RealizedDay::from(const CompositeScenario& scenario) {
    return RealizedDay{scenario.label, scenario.price, scenario.renewable, scenario.consumption};
}

DayOutcome evaluate_policy(const PolicyTable& policy, const RealizedDay& day) {
    const ScenarioPolicy* plan = policy.find(day.label);
    if (plan == nullptr) {
        throw std::invalid_argument("policy has no scenario labelled '" + day.label + "'");
    }
    const std::size_t T = policy.horizon.periods();
    check_day(day, T);
    const auto& st = policy.storage;
    const double carry = policy.options.physical_discharge ? 1.0 - st.self_discharge : 1.0;

    DayOutcome out;
    out.purchase_wh = plan->purchase_wh;
    out.level_wh.assign(T, 0.0);
    out.excess_wh.assign(T, 0.0);
    out.level_wh[0] = st.initial_wh;
    for (std::size_t t = 0; t + 1 < T; ++t) {
        const double available =
            carry * out.level_wh[t] + out.purchase_wh[t] + day.renewable[t] - day.consumption[t];
        const double target = plan->level_wh[t + 1];
        double next = available;
        if (available > target) {
            out.excess_wh[t] = available - target;
            next = target;
        }
        if (next < -kReplayTol) {
            std::ostringstream msg;
            msg << "replay of '" << day.label << "' leaves demand unmet at t=" << t + 1
                << " (shortfall " << -next << " Wh)";
            throw std::runtime_error(msg.str());
        }
        if (next > st.capacity_wh + kReplayTol) {
            throw std::runtime_error("replay of '" + day.label + "' exceeds battery capacity");
        }
        out.level_wh[t + 1] = std::max(next, 0.0);
    }
    if (std::abs(out.level_wh[T - 1] - st.terminal_wh) > kReplayTol) {
        std::ostringstream msg;
        msg << "replay of '" << day.label << "' ends at " << out.level_wh[T - 1]
            << " Wh instead of " << st.terminal_wh << " Wh";
        throw std::runtime_error(msg.str());
    }
    out.level_wh[T - 1] = st.terminal_wh;
    out.cost_cents = schedule_cost(day.price, out.purchase_wh, out.level_wh, policy.loss_cost);
    return out;
}

DayOutcome baseline_policy(const Horizon& horizon, double loss_cost, const RealizedDay& day,
                           double level_wh) {
    const std::size_t T = horizon.periods();
    check_day(day, T);
    if (level_wh < 0.0) throw std::invalid_argument("baseline battery level must be >= 0");
    DayOutcome out;
    out.purchase_wh.assign(T, 0.0);
    out.excess_wh.assign(T, 0.0);
    out.level_wh.assign(T, level_wh);
    // the last period closes the horizon and carries no balance row
    for (std::size_t t = 0; t + 1 < T; ++t) {
        const double net = day.consumption[t] - day.renewable[t];
        out.purchase_wh[t] = std::max(0.0, net);
        out.excess_wh[t] = std::max(0.0, -net);
    }
    out.cost_cents = schedule_cost(day.price, out.purchase_wh, out.level_wh, loss_cost);
    return out;
}

double expected_baseline_cost(const Horizon& horizon, const StorageConfig& storage,
                              const ScenarioSpace& space, double level_wh) {
    const double loss_cost = storage.resolved_loss_cost(space);
    double total = 0.0;
    for (const auto& sc : space.scenarios) {
        total += sc.probability *
                 baseline_policy(horizon, loss_cost, RealizedDay::from(sc), level_wh).cost_cents;
    }
    return total;
}

double monthly_cost(double expected_daily_cost_cents) {
    if (expected_daily_cost_cents < 0.0) {
        throw std::invalid_argument("monthly_cost: negative daily cost");
    }
    return expected_daily_cost_cents * 30.0 / 100.0;
}

PolicyTable solve_for_config(const Horizon& horizon, const StorageConfig& storage,
                             const ScenarioSpace& space, const ProgramOptions& options) {
    if (options.nonanticipative) return solve_policy(horizon, storage, space, options);
    return per_scenario_decomposition(horizon, storage, space, options);
}

std::vector<BatterySweepRow> sweep_battery(const std::vector<double>& capacities_wh,
                                           const std::vector<double>& renewable_scalings,
                                           const ExperimentConfig& base) {
    if (capacities_wh.empty() || renewable_scalings.empty()) {
        throw std::invalid_argument("battery sweep needs capacities and renewable scalings");
    }
    const ScenarioSpace space = build_scenario_space(base);
    std::vector<BatterySweepRow> rows;
    for (double scale : renewable_scalings) {
        ScenarioSpace scaled = space;
        for (auto& sc : scaled.scenarios) {
            for (double& r : sc.renewable) r *= scale;
        }
        for (double capacity : capacities_wh) {
            BatterySweepRow row{capacity, scale, std::nullopt, {}};
            try {
                StorageConfig storage = base.storage;
                storage.capacity_wh = capacity;
                storage.initial_wh = std::min(storage.initial_wh, capacity);
                storage.terminal_wh = std::min(storage.terminal_wh, capacity);
                const PolicyTable policy =
                    solve_for_config(base.horizon, storage, scaled, base.program);
                row.monthly_cost_usd = monthly_cost(policy.expected_cost_cents);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<CacSweepRow> sweep_cac(const std::vector<int>& thresholds, const ExperimentConfig& base) {
    if (thresholds.empty()) throw std::invalid_argument("CAC sweep needs thresholds");
    if (!base.traffic) throw std::invalid_argument("CAC sweep needs a traffic scenario space");
    const int channels = base.base_station.max_connections;
    for (int thr : thresholds) {
        if (thr < 1 || thr > channels) {
            throw std::invalid_argument("CAC threshold " + std::to_string(thr) +
                                        " outside [1, " + std::to_string(channels) + "]");
        }
    }

    struct Point {
        double blocking;
        double dropping;
        double cost_cents;
    };
    auto run = [&](int threshold) {
        TrafficModel model = base.traffic_model;
        model.threshold = threshold;
        const auto conv = consumption_from_traffic(*base.traffic, model, base.base_station,
                                                   base.horizon, base.seed);
        const ScenarioSpace space = compose(base.price, base.renewable, conv.consumption);
        const PolicyTable policy = solve_for_config(base.horizon, base.storage, space, base.program);
        return Point{conv.new_blocking, conv.handoff_dropping, policy.expected_cost_cents};
    };

    const Point no_cac = run(channels);
    std::vector<CacSweepRow> rows;
    for (int thr : thresholds) {
        const Point p = thr == channels ? no_cac : run(thr);
        CacSweepRow row;
        row.threshold = thr;
        row.blocking = p.blocking;
        row.dropping = p.dropping;
        row.monthly_cost_usd = monthly_cost(p.cost_cents);
        row.cost_saving_pct = no_cac.cost_cents > 0.0
            ? 100.0 * (no_cac.cost_cents - p.cost_cents) / no_cac.cost_cents
            : 0.0;
        rows.push_back(row);
    }
    return rows;
}

std::vector<ArrivalSweepRow> sweep_arrival_rate(const std::vector<double>& rates_per_min,
                                                const ExperimentConfig& base) {
    if (rates_per_min.empty()) throw std::invalid_argument("arrival sweep needs rates");
    double max_rate = 0.0;
    for (double r : rates_per_min) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw std::invalid_argument("arrival rates must be finite and non-negative");
        }
        max_rate = std::max(max_rate, r);
    }
    const double hf = base.traffic_model.handoff_fraction;
    SimulationOptions caps;
    caps.new_rate_cap = max_rate * (1.0 - hf);
    caps.handoff_rate_cap = max_rate * hf;

    std::vector<ArrivalSweepRow> rows;
    for (double rate : rates_per_min) {
        TrafficSpace traffic;
        traffic.scenarios.push_back(
            {"uniform", std::vector<double>(base.horizon.periods(), rate), 1.0});
        const auto conv = consumption_from_traffic(traffic, base.traffic_model, base.base_station,
                                                   base.horizon, base.seed, caps);
        const ScenarioSpace space = compose(base.price, base.renewable, conv.consumption);
        const PolicyTable policy = solve_for_config(base.horizon, base.storage, space, base.program);

        ArrivalSweepRow row;
        row.arrival_rate_per_min = rate;
        for (const auto& p : policy.scenarios) {
            row.avg_purchase_wh += p.probability * average(p.purchase_wh);
            row.avg_battery_wh += p.probability * average(p.level_wh);
        }
        row.monthly_cost_usd = monthly_cost(policy.expected_cost_cents);
        rows.push_back(row);
    }
    return rows;
}

std::optional<int> select_threshold(const std::vector<CacSweepRow>& rows, double max_blocking) {
    std::optional<int> best;
    for (const auto& row : rows) {
        if (row.blocking < max_blocking && (!best || row.threshold < *best)) best = row.threshold;
    }
    return best;
}

} // namespace greenbs
