#include "greenbs/units.hpp"

#include <stdexcept>
#include <string>

namespace greenbs {

Horizon::Horizon(std::size_t periods, double period_length_h)
    : periods_(periods), period_length_h_(period_length_h) {
    if (periods_ < 2) {
        throw std::invalid_argument("horizon needs at least 2 periods, got " + std::to_string(periods_));
    }
    if (!(period_length_h_ > 0.0)) {
        throw std::invalid_argument("period length must be positive");
    }
}

double energy_cost(double energy_wh, double price_cents_per_kwh) {
    if (energy_wh < 0.0 || price_cents_per_kwh < 0.0) {
        throw std::invalid_argument("energy_cost: negative energy or price");
    }
    return energy_wh * price_cents_per_kwh / 1000.0;
}

} // namespace greenbs
