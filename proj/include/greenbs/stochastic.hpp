#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "greenbs/lp.hpp"
#include "greenbs/scenario.hpp"
#include "greenbs/units.hpp"

namespace greenbs {

/// Battery parameters. Energies in Wh.
struct StorageConfig {
    double capacity_wh = 2000.0;
    double initial_wh = 500.0;
    double terminal_wh = 500.0;
    double self_discharge = 0.001; // fraction per period
    /// Objective coefficient on stored energy, cents per Wh per period.
    /// Unset means self_discharge * mean price / 1000.
    std::optional<double> loss_cost_cents_per_wh;

    /// Throws InfeasibleProgram for endpoint levels outside [0, capacity],
    /// std::invalid_argument for other bad values.
    void validate() const;
    double resolved_loss_cost(const ScenarioSpace& space) const;
};

struct ProgramOptions {
    /// Force x_1 equal across scenarios sharing their first-period data.
    bool nonanticipative = false;
    /// Apply (1 - self_discharge) to the stored energy carried into each balance row.
    bool physical_discharge = false;
};

class InfeasibleProgram : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class VarKind { purchase, level, excess };

/// Column layout: one block of 3T columns per scenario holding
/// x_1..x_T, s_1..s_T, y_1..y_T.
class VariableIndex {
public:
    struct Ref {
        VarKind kind;
        std::size_t period;   // 0-based
        std::size_t scenario; // 0-based
    };

    VariableIndex(std::size_t periods, std::size_t scenarios)
        : periods_(periods), scenarios_(scenarios) {}

    std::size_t column(VarKind kind, std::size_t period, std::size_t scenario) const {
        return scenario * 3 * periods_ + static_cast<std::size_t>(kind) * periods_ + period;
    }
    Ref at(std::size_t column) const;
    std::size_t size() const { return 3 * periods_ * scenarios_; }

private:
    std::size_t periods_;
    std::size_t scenarios_;
};

struct DeterministicEquivalent {
    LinearProgram lp;
    VariableIndex index;
    double loss_cost = 0.0;
    std::size_t balance_rows = 0;
};

DeterministicEquivalent build_deterministic_equivalent(const Horizon& horizon,
                                                       const StorageConfig& storage,
                                                       const ScenarioSpace& space,
                                                       const ProgramOptions& options = {});

struct ScenarioPolicy {
    std::string label;
    double probability = 0.0;
    std::vector<double> purchase_wh; // x
    std::vector<double> level_wh;    // s
    std::vector<double> excess_wh;   // y
    double cost_cents = 0.0;         // unweighted cost of this scenario
};

/// Optimal decisions per (period, scenario).
struct PolicyTable {
    Horizon horizon{2};
    StorageConfig storage;
    double loss_cost = 0.0; // resolved cents/Wh/period
    ProgramOptions options;
    std::vector<ScenarioPolicy> scenarios;
    double expected_cost_cents = 0.0;

    const ScenarioPolicy* find(const std::string& label) const;
};

/// Solves the full deterministic equivalent.
PolicyTable solve_policy(const Horizon& horizon, const StorageConfig& storage,
                         const ScenarioSpace& space, const ProgramOptions& options = {});

/// Solves one LP per scenario. Only valid without nonanticipativity.
PolicyTable per_scenario_decomposition(const Horizon& horizon, const StorageConfig& storage,
                                       const ScenarioSpace& space,
                                       const ProgramOptions& options = {});

/// Cost of one scenario's schedule: sum_t x_t P_t / 1000 + loss_cost * s_t.
double schedule_cost(const std::vector<double>& price, const std::vector<double>& purchase,
                     const std::vector<double>& level, double loss_cost);

/// Re-checks balance, capacity, endpoint and sign constraints of a policy
/// against the scenario data. Empty result means every check passed.
std::vector<std::string> verify_policy(const PolicyTable& policy, const ScenarioSpace& space,
                                       double balance_tol = 1e-6);

} // namespace greenbs
