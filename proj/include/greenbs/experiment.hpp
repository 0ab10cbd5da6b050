#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "greenbs/power_model.hpp"
#include "greenbs/scenario.hpp"
#include "greenbs/stochastic.hpp"
#include "greenbs/traffic.hpp"

namespace greenbs {

/// Traffic scenario given as a total arrival-rate profile (connections/min).
struct TrafficScenario {
    std::string label;
    std::vector<double> rate;
    double probability = 0.0;

    bool operator==(const TrafficScenario&) const = default;
};

struct TrafficSpace {
    std::vector<TrafficScenario> scenarios;

    bool operator==(const TrafficSpace&) const = default;
};

/// How rate profiles become occupancy and then consumption traces.
struct TrafficModel {
    double mean_holding_min = 10.0;
    double handoff_fraction = 0.3;
    int threshold = 25; // guard-channel threshold; channels come from the base station
    int replications = 100;
    double warmup_min = 120.0;

    bool operator==(const TrafficModel&) const = default;
};

/// Everything needed to build a scenario space and solve it.
struct ExperimentConfig {
    Horizon horizon{24};
    BaseStationParams base_station;
    StorageConfig storage;
    ProgramOptions program;
    TrafficModel traffic_model;
    double baseline_level_wh = 1000.0;
    std::uint64_t seed = 1;

    MarginalSpace price{MarginalKind::price, {}};
    MarginalSpace renewable{MarginalKind::renewable, {}};
    /// Exactly one of consumption / traffic feeds the consumption marginal,
    /// unless `joint` supplies the whole space directly.
    std::optional<MarginalSpace> consumption;
    std::optional<TrafficSpace> traffic;
    std::optional<ScenarioSpace> joint;
};

struct TrafficConversion {
    MarginalSpace consumption{MarginalKind::consumption, {}};
    std::vector<QosStats> qos;   // per traffic scenario
    double new_blocking = 0.0;   // probability-weighted over scenarios
    double handoff_dropping = 0.0;
};

/// Simulates every traffic scenario (seed derive_seed(seed, index)) and maps
/// the mean occupancy through the power model.
TrafficConversion consumption_from_traffic(const TrafficSpace& traffic, const TrafficModel& model,
                                           const BaseStationParams& base_station,
                                           const Horizon& horizon, std::uint64_t seed,
                                           const SimulationOptions& caps = {});

/// Composite scenario space for a configuration.
ScenarioSpace build_scenario_space(const ExperimentConfig& config);

/// Default calibration of the micro base station study: 2 price x 2 solar x
/// 5 traffic scenarios over 24 hourly periods.
ExperimentConfig study_config();

/// Hourly half-sine solar profile over [start_h, end_h) with the given mean
/// energy per hour inside the window.
std::vector<double> half_sine_profile(double mean_wh, double start_h, double end_h,
                                      std::size_t hours = 24);

/// Hourly profile equal to `base` except `peak` inside [start_h, end_h).
std::vector<double> window_profile(double base, double peak, double start_h, double end_h,
                                   std::size_t hours = 24);

} // namespace greenbs
