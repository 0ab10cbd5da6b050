#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "greenbs/experiment.hpp"
#include "greenbs/random.hpp"

namespace greenbs {

std::vector<double> half_sine_profile(double mean_wh, double start_h, double end_h,
                                      std::size_t hours) {
    if (!(end_h > start_h)) throw std::invalid_argument("half_sine_profile: empty window");
    const double width = end_h - start_h;
    // p(h) = A sin(pi (h - start) / width); mean over the window is 2A/pi
    const double amplitude = mean_wh * std::numbers::pi / 2.0;
    std::vector<double> profile(hours, 0.0);
    for (std::size_t h = 0; h < hours; ++h) {
        const double a = std::clamp(static_cast<double>(h), start_h, end_h);
        const double b = std::clamp(static_cast<double>(h + 1), start_h, end_h);
        if (b <= a) continue;
        const double k = std::numbers::pi / width;
        profile[h] = amplitude / k * (std::cos(k * (a - start_h)) - std::cos(k * (b - start_h)));
        if (std::abs(profile[h]) < 1e-12) profile[h] = 0.0;
    }
    return profile;
}

std::vector<double> window_profile(double base, double peak, double start_h, double end_h,
                                   std::size_t hours) {
    std::vector<double> profile(hours, base);
    for (std::size_t h = 0; h < hours; ++h) {
        if (static_cast<double>(h) >= start_h && static_cast<double>(h) < end_h) profile[h] = peak;
    }
    return profile;
}

ExperimentConfig study_config() {
    ExperimentConfig c;
    c.horizon = Horizon(24, 1.0);
    c.base_station = BaseStationParams{194.25, 24.0, 25};
    c.storage.capacity_wh = 2000.0;
    c.storage.initial_wh = 500.0;
    c.storage.terminal_wh = 500.0;
    c.storage.self_discharge = 0.001;

    c.price.scenarios = {
        {"peak", window_profile(12.0, 20.0, 12.0, 20.0), 0.6},
        {"normal", std::vector<double>(24, 12.0), 0.4},
    };
    c.renewable.scenarios = {
        {"clear", half_sine_profile(195.0, 6.0, 18.0), 0.6},
        {"cloudy", half_sine_profile(100.0, 6.0, 18.0), 0.4},
    };

    const double light = 0.15;
    TrafficSpace traffic;
    traffic.scenarios = {
        {"heavy_uniform", std::vector<double>(24, 0.56), 0.1},
        {"medium_uniform", std::vector<double>(24, 0.22), 0.1},
        {"light_uniform", std::vector<double>(24, light), 0.2},
        {"heavy_morning", window_profile(light, 0.8, 8.0, 11.0), 0.2},
        {"heavy_evening", window_profile(light, 0.8, 17.0, 21.0), 0.4},
    };
    c.traffic = traffic;
    return c;
}

TrafficConversion consumption_from_traffic(const TrafficSpace& traffic, const TrafficModel& model,
                                           const BaseStationParams& base_station,
                                           const Horizon& horizon, std::uint64_t seed,
                                           const SimulationOptions& caps) {
    if (traffic.scenarios.empty()) {
        throw std::invalid_argument("traffic space has no scenarios");
    }
    const CacConfig cac{base_station.max_connections, model.threshold};
    SimulationOptions options = caps;
    options.warmup_min = model.warmup_min;

    TrafficConversion out;
    for (std::size_t i = 0; i < traffic.scenarios.size(); ++i) {
        const auto& sc = traffic.scenarios[i];
        const auto spec = TrafficSpec::from_total(sc.rate, model.handoff_fraction,
                                                  model.mean_holding_min);
        const TrafficRun run = simulate_replications(spec, cac, horizon, model.replications,
                                                     derive_seed(seed, i), options);
        out.consumption.scenarios.push_back(
            {sc.label, consumption_trace(base_station, run.occupancy, horizon), sc.probability});
        out.new_blocking += sc.probability * run.qos.new_blocking_prob;
        out.handoff_dropping += sc.probability * run.qos.handoff_dropping_prob;
        out.qos.push_back(run.qos);
    }
    return out;
}

ScenarioSpace build_scenario_space(const ExperimentConfig& config) {
    if (config.joint) {
        require_valid(*config.joint, config.horizon);
        return *config.joint;
    }
    if (config.consumption.has_value() == config.traffic.has_value()) {
        throw std::invalid_argument(
            "configuration needs exactly one of a consumption or a traffic scenario space");
    }
    MarginalSpace consumption;
    if (config.consumption) {
        consumption = *config.consumption;
    } else {
        consumption = consumption_from_traffic(*config.traffic, config.traffic_model,
                                               config.base_station, config.horizon, config.seed)
                          .consumption;
    }
    ScenarioSpace space = compose(config.price, config.renewable, consumption);
    require_valid(space, config.horizon);
    return space;
}

} // namespace greenbs
