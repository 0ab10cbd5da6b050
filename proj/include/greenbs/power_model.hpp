#pragma once

#include <span>
#include <vector>

#include "greenbs/units.hpp"

namespace greenbs {

/// Affine micro base station model: C = e_static + e_dynamic * N.
struct BaseStationParams {
    double e_static_w = 194.25;
    double e_dynamic_w = 24.0;
    int max_connections = 25;

    void validate() const;
};

/// Instantaneous power draw with `n_active` ongoing connections.
double consumption(const BaseStationParams& params, int n_active);

/// Per-period energy (Wh) for a trace of time-averaged occupancies.
///
/// Fractional occupancies are accepted; the affine model applied to the
/// time average gives the exact per-period energy.
std::vector<double> consumption_trace(const BaseStationParams& params,
                                      std::span<const double> occupancy,
                                      const Horizon& horizon);

} // namespace greenbs
