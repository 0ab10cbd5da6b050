#include "greenbs/power_model.hpp"

#include <stdexcept>
#include <string>

namespace greenbs {

void BaseStationParams::validate() const {
    if (e_static_w < 0.0 || e_dynamic_w < 0.0) {
        throw std::invalid_argument("base station power coefficients must be non-negative");
    }
    if (max_connections < 1) {
        throw std::invalid_argument("base station needs at least one channel");
    }
}

double consumption(const BaseStationParams& params, int n_active) {
    params.validate();
    if (n_active < 0 || n_active > params.max_connections) {
        throw std::invalid_argument("active connections " + std::to_string(n_active) +
                                    " outside [0, " + std::to_string(params.max_connections) + "]");
    }
    return params.e_static_w + params.e_dynamic_w * n_active;
}

std::vector<double> consumption_trace(const BaseStationParams& params,
                                      std::span<const double> occupancy,
                                      const Horizon& horizon) {
    params.validate();
    if (occupancy.size() != horizon.periods()) {
        throw std::invalid_argument("occupancy trace has " + std::to_string(occupancy.size()) +
                                    " periods, horizon has " + std::to_string(horizon.periods()));
    }
    std::vector<double> energy;
    energy.reserve(occupancy.size());
    for (double n : occupancy) {
        if (n < 0.0 || n > params.max_connections) {
            throw std::invalid_argument("occupancy " + std::to_string(n) + " outside channel range");
        }
        energy.push_back((params.e_static_w + params.e_dynamic_w * n) * horizon.period_length_h());
    }
    return energy;
}

} // namespace greenbs
