#pragma once

#include <cstddef>

namespace greenbs {

// Units used throughout the library:
//   power   W
//   energy  Wh (per-period energies drive every balance equation)
//   price   cents per kWh
//   cost    cents (dollars only at display time)

/// Decision horizon: T periods of period_length_h hours each.
class Horizon {
public:
    explicit Horizon(std::size_t periods, double period_length_h = 1.0);

    std::size_t periods() const { return periods_; }
    double period_length_h() const { return period_length_h_; }
    double period_length_min() const { return period_length_h_ * 60.0; }

    bool operator==(const Horizon&) const = default;

private:
    std::size_t periods_;
    double period_length_h_;
};

/// Cost in cents of buying `energy_wh` at `price_cents_per_kwh`.
double energy_cost(double energy_wh, double price_cents_per_kwh);

inline double cents_to_dollars(double cents) { return cents / 100.0; }

} // namespace greenbs
