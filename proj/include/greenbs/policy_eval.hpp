#pragma once

#include <optional>
#include <string>
#include <vector>

#include "greenbs/experiment.hpp"
#include "greenbs/stochastic.hpp"

namespace greenbs {

/// Observed traces for one day, tagged with the scenario they realize.
struct RealizedDay {
    std::string label;
    std::vector<double> price;
    std::vector<double> renewable;
    std::vector<double> consumption;

    static RealizedDay from(const CompositeScenario& scenario);
};

struct DayOutcome {
    double cost_cents = 0.0;
    std::vector<double> purchase_wh;
    std::vector<double> level_wh;
    std::vector<double> excess_wh;
};

/// Replays the policy's purchases for the realized scenario. Stored energy
/// follows the planned level; anything above it is dumped as excess.
/// Throws std::invalid_argument for an unknown label and std::runtime_error
/// when the replay breaks capacity, demand or terminal constraints.
DayOutcome evaluate_policy(const PolicyTable& policy, const RealizedDay& day);

/// Grid covers max(0, C_t - R_t) in every balanced period; the battery sits at
/// `level_wh` and is still charged the storage loss term.
DayOutcome baseline_policy(const Horizon& horizon, double loss_cost, const RealizedDay& day,
                           double level_wh = 1000.0);

/// Probability-weighted baseline cost over a space, with the loss term
/// resolved the same way as for the optimized program.
double expected_baseline_cost(const Horizon& horizon, const StorageConfig& storage,
                              const ScenarioSpace& space, double level_wh = 1000.0);

/// Expected daily cents to dollars per 30-day month.
double monthly_cost(double expected_daily_cost_cents);

/// Full LP when nonanticipativity is requested, per-scenario LPs otherwise.
PolicyTable solve_for_config(const Horizon& horizon, const StorageConfig& storage,
                             const ScenarioSpace& space, const ProgramOptions& options);

struct BatterySweepRow {
    double capacity_wh = 0.0;
    double renewable_scale = 1.0;
    std::optional<double> monthly_cost_usd; // empty when the point failed
    std::string error;
};

struct CacSweepRow {
    int threshold = 0;
    double blocking = 0.0;
    double dropping = 0.0;
    double monthly_cost_usd = 0.0;
    double cost_saving_pct = 0.0;
};

struct ArrivalSweepRow {
    double arrival_rate_per_min = 0.0;
    double avg_purchase_wh = 0.0;
    double avg_battery_wh = 0.0;
    double monthly_cost_usd = 0.0;
};

/// Rows ordered by renewable scale, then capacity. Initial and terminal
/// levels are clamped to each capacity.
std::vector<BatterySweepRow> sweep_battery(const std::vector<double>& capacities_wh,
                                           const std::vector<double>& renewable_scalings,
                                           const ExperimentConfig& base);

/// Needs a traffic space in `base`. All thresholds share one seed per traffic
/// scenario, so every row sees the same arrival stream.
std::vector<CacSweepRow> sweep_cac(const std::vector<int>& thresholds, const ExperimentConfig& base);

/// Replaces the traffic with one uniform profile per rate; common seed and
/// uniformization caps across rates.
std::vector<ArrivalSweepRow> sweep_arrival_rate(const std::vector<double>& rates_per_min,
                                                const ExperimentConfig& base);

/// Smallest threshold whose new-connection blocking is below `max_blocking`.
/// Dropping is non-decreasing and saving non-increasing in the threshold, so
/// this row minimizes dropping and maximizes saving under the constraint.
std::optional<int> select_threshold(const std::vector<CacSweepRow>& rows, double max_blocking);

} // namespace greenbs
