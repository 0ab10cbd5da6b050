#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "greenbs/units.hpp"

namespace greenbs {

inline constexpr double kProbabilityTolerance = 1e-9;

enum class MarginalKind { price, renewable, consumption };

std::string_view to_string(MarginalKind kind);

/// One trace for a single uncertainty source.
///
/// Units depend on the owning space: cents/kWh for price, Wh per period for
/// renewable generation and consumption.
struct MarginalScenario {
    std::string label;
    std::vector<double> values;
    double probability = 0.0;

    bool operator==(const MarginalScenario&) const = default;
};

struct MarginalSpace {
    MarginalKind kind = MarginalKind::price;
    std::vector<MarginalScenario> scenarios;

    bool operator==(const MarginalSpace&) const = default;
};

/// Joint realization over the horizon of price, renewable and consumption.
struct CompositeScenario {
    std::string label;
    std::vector<double> price;       // cents/kWh
    std::vector<double> renewable;   // Wh per period
    std::vector<double> consumption; // Wh per period
    double probability = 0.0;

    bool operator==(const CompositeScenario&) const = default;
};

struct ScenarioSpace {
    std::vector<CompositeScenario> scenarios;

    std::size_t size() const { return scenarios.size(); }
    double total_probability() const;
    /// Probability-weighted mean price over all periods and scenarios.
    double mean_price() const;

    bool operator==(const ScenarioSpace&) const = default;
};

/// Relative frequencies of observed scenario counts.
std::vector<double> estimate_probabilities(std::span<const double> counts);

/// Independent product of three marginal spaces. Throws std::invalid_argument
/// if any marginal is invalid or the horizons disagree.
ScenarioSpace compose(const MarginalSpace& price,
                      const MarginalSpace& renewable,
                      const MarginalSpace& consumption);

/// Empty result means the space is usable with `horizon`.
std::vector<std::string> validate(const ScenarioSpace& space, const Horizon& horizon);
std::vector<std::string> validate(const MarginalSpace& space, const Horizon& horizon);

/// Throws std::invalid_argument with all diagnostics joined.
void require_valid(const ScenarioSpace& space, const Horizon& horizon);

} // namespace greenbs
