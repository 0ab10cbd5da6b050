#pragma once

#include <string>

#include "greenbs/scenario.hpp"
#include "greenbs/stochastic.hpp"
#include "oracles.hpp"

namespace testing_support {

struct ProgramInstance {
    greenbs::Horizon horizon{2};
    greenbs::StorageConfig storage;
    greenbs::ScenarioSpace space;
};

/// Random feasible instance: T in [2, max_periods], 1..max_scenarios scenarios.
inline ProgramInstance random_program(oracle::Gen& g, int max_periods = 12, int max_scenarios = 6) {
    ProgramInstance inst;
    const auto T = static_cast<std::size_t>(g.integer(2, max_periods));
    inst.horizon = greenbs::Horizon(T);
    inst.storage.capacity_wh = g.real(200.0, 3000.0);
    inst.storage.initial_wh = g.real(0.0, inst.storage.capacity_wh);
    inst.storage.terminal_wh = g.real(0.0, inst.storage.capacity_wh);
    inst.storage.self_discharge = g.chance(0.3) ? 0.0 : g.real(0.0, 0.01);

    const int n = g.integer(1, max_scenarios);
    double mass = 0.0;
    for (int w = 0; w < n; ++w) {
        greenbs::CompositeScenario s;
        s.label = "w" + std::to_string(w);
        s.probability = g.integer(1, 10);
        mass += s.probability;
        for (std::size_t t = 0; t < T; ++t) {
            s.price.push_back(g.real(5.0, 30.0));
            s.renewable.push_back(g.chance(0.4) ? 0.0 : g.real(0.0, 400.0));
            s.consumption.push_back(g.real(150.0, 800.0));
        }
        inst.space.scenarios.push_back(s);
    }
    for (auto& s : inst.space.scenarios) s.probability /= mass;
    return inst;
}

} // namespace testing_support
