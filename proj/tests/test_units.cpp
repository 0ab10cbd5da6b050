#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "greenbs/power_model.hpp"
#include "greenbs/units.hpp"
#include "oracles.hpp"

using namespace greenbs;

TEST_CASE("energy cost examples") {
    CHECK(energy_cost(0.0, 20.0) == 0.0);
    CHECK(energy_cost(1000.0, 12.0) == doctest::Approx(12.0));
    CHECK(energy_cost(230.0, 20.0) == doctest::Approx(4.6));
    CHECK_THROWS_AS(energy_cost(-1.0, 12.0), std::invalid_argument);
    CHECK_THROWS_AS(energy_cost(1.0, -12.0), std::invalid_argument);
}

TEST_CASE("energy cost is linear in energy") {
    oracle::Gen g(3);
    for (int k = 0; k < 1000; ++k) {
        const double a = g.real(0.0, 5000.0);
        const double b = g.real(0.0, 5000.0);
        const double p = g.real(0.0, 40.0);
        CHECK(energy_cost(a + b, p) == doctest::Approx(energy_cost(a, p) + energy_cost(b, p)));
        CHECK(energy_cost(a, 0.0) == 0.0);
        CHECK(energy_cost(0.0, p) == 0.0);
    }
}

TEST_CASE("horizon rejects degenerate clocks") {
    CHECK_THROWS_AS(Horizon(1), std::invalid_argument);
    CHECK_THROWS_AS(Horizon(24, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Horizon(24, -1.0), std::invalid_argument);
    const Horizon h(24, 0.5);
    CHECK(h.periods() == 24);
    CHECK(h.period_length_min() == 30.0);
    CHECK(cents_to_dollars(1279.0) == doctest::Approx(12.79));
}

TEST_CASE("base station power model") {
    const BaseStationParams station;
    CHECK(consumption(station, 0) == 194.25);
    CHECK(consumption(station, 25) == 794.25);
    CHECK(consumption(BaseStationParams{0.0, 0.0, 25}, 10) == 0.0);
    CHECK_THROWS_AS(consumption(station, 26), std::invalid_argument);
    CHECK_THROWS_AS(consumption(station, -1), std::invalid_argument);
    CHECK_THROWS_AS(consumption(BaseStationParams{-1.0, 24.0, 25}, 0), std::invalid_argument);
}

TEST_CASE("consumption traces") {
    const BaseStationParams station;
    const std::vector<double> idle(4, 0.0);
    CHECK(consumption_trace(station, idle, Horizon(4)) == std::vector<double>(4, 194.25));

    const std::vector<double> busy{1.5, 1.5};
    const auto energy = consumption_trace(station, busy, Horizon(2));
    CHECK(energy[0] == doctest::Approx(230.25));
    CHECK(energy[1] == doctest::Approx(230.25));

    // half-hour periods hold half the energy
    CHECK(consumption_trace(station, idle, Horizon(4, 0.5))[0] == doctest::Approx(97.125));

    CHECK_THROWS_AS(consumption_trace(station, idle, Horizon(3)), std::invalid_argument);
    const std::vector<double> too_many{26.0, 0.0};
    CHECK_THROWS_AS(consumption_trace(station, too_many, Horizon(2)), std::invalid_argument);
}

TEST_CASE("a four-period watt trace is representable") {
    // morning, afternoon, evening, night draw at 6-hour periods
    const std::vector<double> watts{200, 230, 240, 200};
    const BaseStationParams params{200.0, 1.0, 40};
    std::vector<double> occupancy;
    for (double w : watts) occupancy.push_back(w - 200.0);
    const auto energy = consumption_trace(params, occupancy, Horizon(4, 6.0));
    for (std::size_t i = 0; i < 4; ++i) CHECK(energy[i] == doctest::Approx(watts[i] * 6.0));
}
