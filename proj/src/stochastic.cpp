#include "greenbs/stochastic.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace greenbs {

void StorageConfig::validate() const {
    if (!(capacity_wh >= 0.0) || !std::isfinite(capacity_wh)) {
        throw std::invalid_argument("battery capacity must be finite and non-negative");
    }
    if (!(self_discharge >= 0.0 && self_discharge < 1.0)) {
        throw std::invalid_argument("self-discharge rate must lie in [0, 1)");
    }
    if (loss_cost_cents_per_wh && !(*loss_cost_cents_per_wh >= 0.0)) {
        throw std::invalid_argument("storage loss cost must be non-negative");
    }
    std::string violated;
    if (!(initial_wh >= 0.0 && initial_wh <= capacity_wh)) {
        violated += " initial level " + std::to_string(initial_wh) + " Wh not in [0, " +
                    std::to_string(capacity_wh) + "];";
    }
    if (!(terminal_wh >= 0.0 && terminal_wh <= capacity_wh)) {
        violated += " terminal level " + std::to_string(terminal_wh) + " Wh not in [0, " +
                    std::to_string(capacity_wh) + "];";
    }
    if (!violated.empty()) {
        violated.pop_back();
        throw InfeasibleProgram("endpoint constraints violate capacity:" + violated);
    }
}

double StorageConfig::resolved_loss_cost(const ScenarioSpace& space) const {
    if (loss_cost_cents_per_wh) return *loss_cost_cents_per_wh;
    return self_discharge * space.mean_price() / 1000.0;
}

VariableIndex::Ref VariableIndex::at(std::size_t column) const {
    if (column >= size()) throw std::out_of_range("VariableIndex: column out of range");
    const std::size_t block = 3 * periods_;
    const std::size_t within = column % block;
    return Ref{static_cast<VarKind>(within / periods_), within % periods_, column / block};
}

const ScenarioPolicy* PolicyTable::find(const std::string& label) const {
    for (const auto& s : scenarios) {
        if (s.label == label) return &s;
    }
    return nullptr;
}

namespace {

DeterministicEquivalent build(const Horizon& horizon, const StorageConfig& storage,
                              const ScenarioSpace& space, const ProgramOptions& options,
                              double loss_cost) {
    const std::size_t T = horizon.periods();
    const std::size_t W = space.size();
    DeterministicEquivalent de{LinearProgram{}, VariableIndex(T, W), loss_cost, 0};
    auto& lp = de.lp;

    const char* prefix[] = {"x", "s", "y"};
    for (std::size_t w = 0; w < W; ++w) {
        const auto& sc = space.scenarios[w];
        for (int kind = 0; kind < 3; ++kind) {
            for (std::size_t t = 0; t < T; ++t) {
                const std::string label = std::string(prefix[kind]) + "_" + std::to_string(t + 1) +
                                          "_" + std::to_string(w + 1);
                double cost = 0.0;
                double lower = 0.0;
                double upper = kInfinity;
                if (kind == 0) {
                    cost = sc.probability * sc.price[t] / 1000.0;
                } else if (kind == 1) {
                    cost = sc.probability * loss_cost;
                    upper = storage.capacity_wh;
                    if (t == 0) lower = upper = storage.initial_wh;
                    if (t == T - 1) lower = upper = storage.terminal_wh;
                }
                lp.add_variable(label, cost, lower, upper);
            }
        }
    }

    const double carry = options.physical_discharge ? 1.0 - storage.self_discharge : 1.0;
    const auto& idx = de.index;
    for (std::size_t w = 0; w < W; ++w) {
        const auto& sc = space.scenarios[w];
        for (std::size_t t = 0; t + 1 < T; ++t) {
            const LinearProgram::Term terms[] = {
                {idx.column(VarKind::level, t, w), carry},
                {idx.column(VarKind::purchase, t, w), 1.0},
                {idx.column(VarKind::level, t + 1, w), -1.0},
                {idx.column(VarKind::excess, t, w), -1.0},
            };
            lp.add_eq_row(terms, sc.consumption[t] - sc.renewable[t]);
            ++de.balance_rows;
        }
    }

    if (options.nonanticipative) {
        std::map<std::tuple<double, double, double>, std::size_t> first_of_group;
        for (std::size_t w = 0; w < W; ++w) {
            const auto& sc = space.scenarios[w];
            const auto key = std::make_tuple(sc.price[0], sc.renewable[0], sc.consumption[0]);
            const auto [it, inserted] = first_of_group.emplace(key, w);
            if (inserted) continue;
            const LinearProgram::Term terms[] = {
                {idx.column(VarKind::purchase, 0, it->second), 1.0},
                {idx.column(VarKind::purchase, 0, w), -1.0},
            };
            lp.add_eq_row(terms, 0.0);
        }
    }
    return de;
}

void check_inputs(const Horizon& horizon, const StorageConfig& storage,
                  const ScenarioSpace& space) {
    storage.validate();
    require_valid(space, horizon);
}

PolicyTable extract(const Horizon& horizon, const StorageConfig& storage,
                    const ProgramOptions& options, double loss_cost, const ScenarioSpace& space,
                    const DeterministicEquivalent& de, const LpSolution& sol) {
    PolicyTable table;
    table.horizon = horizon;
    table.storage = storage;
    table.loss_cost = loss_cost;
    table.options = options;
    const std::size_t T = horizon.periods();
    for (std::size_t w = 0; w < space.size(); ++w) {
        const auto& sc = space.scenarios[w];
        ScenarioPolicy p;
        p.label = sc.label;
        p.probability = sc.probability;
        for (std::size_t t = 0; t < T; ++t) {
            p.purchase_wh.push_back(sol.x[de.index.column(VarKind::purchase, t, w)]);
            p.level_wh.push_back(sol.x[de.index.column(VarKind::level, t, w)]);
            p.excess_wh.push_back(sol.x[de.index.column(VarKind::excess, t, w)]);
        }
        p.cost_cents = schedule_cost(sc.price, p.purchase_wh, p.level_wh, loss_cost);
        table.scenarios.push_back(std::move(p));
    }
    return table;
}

LpSolution solve_or_throw(const LinearProgram& lp) {
    LpSolution sol = solve(lp);
    if (sol.status == LpStatus::infeasible) {
        throw InfeasibleProgram("power management program is infeasible");
    }
    if (sol.status == LpStatus::unbounded) {
        throw std::runtime_error("power management program is unbounded (negative price data?)");
    }
    return sol;
}

} // namespace

DeterministicEquivalent build_deterministic_equivalent(const Horizon& horizon,
                                                       const StorageConfig& storage,
                                                       const ScenarioSpace& space,
                                                       const ProgramOptions& options) {
    check_inputs(horizon, storage, space);
    return build(horizon, storage, space, options, storage.resolved_loss_cost(space));
}

PolicyTable solve_policy(const Horizon& horizon, const StorageConfig& storage,
                         const ScenarioSpace& space, const ProgramOptions& options) {
    const auto de = build_deterministic_equivalent(horizon, storage, space, options);
    const LpSolution sol = solve_or_throw(de.lp);
    PolicyTable table = extract(horizon, storage, options, de.loss_cost, space, de, sol);
    table.expected_cost_cents = sol.objective_value;
    return table;
}

PolicyTable per_scenario_decomposition(const Horizon& horizon, const StorageConfig& storage,
                                       const ScenarioSpace& space,
                                       const ProgramOptions& options) {
    if (options.nonanticipative) {
        throw std::invalid_argument(
            "per-scenario decomposition does not apply to the nonanticipative program");
    }
    check_inputs(horizon, storage, space);
    const double loss_cost = storage.resolved_loss_cost(space);

    PolicyTable table;
    table.horizon = horizon;
    table.storage = storage;
    table.loss_cost = loss_cost;
    table.options = options;
    for (const auto& sc : space.scenarios) {
        ScenarioSpace single;
        single.scenarios.push_back(sc);
        single.scenarios.back().probability = 1.0;
        const auto de = build(horizon, storage, single, options, loss_cost);
        const LpSolution sol = solve_or_throw(de.lp);
        PolicyTable part = extract(horizon, storage, options, loss_cost, single, de, sol);
        ScenarioPolicy p = std::move(part.scenarios.front());
        p.probability = sc.probability;
        p.cost_cents = sol.objective_value;
        table.scenarios.push_back(std::move(p));
    }
    // fixed scenario order keeps the sum reproducible
    for (const auto& p : table.scenarios) table.expected_cost_cents += p.probability * p.cost_cents;
    return table;
}

double schedule_cost(const std::vector<double>& price, const std::vector<double>& purchase,
                     const std::vector<double>& level, double loss_cost) {
    double cost = 0.0;
    for (std::size_t t = 0; t < purchase.size(); ++t) {
        cost += purchase[t] * price[t] / 1000.0 + loss_cost * level[t];
    }
    return cost;
}

std::vector<std::string> verify_policy(const PolicyTable& policy, const ScenarioSpace& space,
                                       double balance_tol) {
    std::vector<std::string> issues;
    const std::size_t T = policy.horizon.periods();
    const auto& st = policy.storage;
    const double carry = policy.options.physical_discharge ? 1.0 - st.self_discharge : 1.0;
    if (policy.scenarios.size() != space.size()) {
        issues.push_back("policy covers " + std::to_string(policy.scenarios.size()) +
                         " scenarios, space has " + std::to_string(space.size()));
        return issues;
    }
    auto report = [&](const std::string& label, std::size_t t, const std::string& what,
                      double value) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "scenario '" << label << "' t=" << t + 1 << ": " << what << " (" << value << ")";
        issues.push_back(msg.str());
    };
    for (std::size_t w = 0; w < space.size(); ++w) {
        const auto& sc = space.scenarios[w];
        const auto& p = policy.scenarios[w];
        if (p.label != sc.label || p.purchase_wh.size() != T || p.level_wh.size() != T ||
            p.excess_wh.size() != T) {
            issues.push_back("scenario '" + sc.label + "': policy shape mismatch");
            continue;
        }
        for (std::size_t t = 0; t + 1 < T; ++t) {
            const double in = carry * p.level_wh[t] + p.purchase_wh[t] + sc.renewable[t];
            const double out = p.level_wh[t + 1] + sc.consumption[t] + p.excess_wh[t];
            if (std::abs(in - out) > balance_tol) report(sc.label, t, "balance residual", in - out);
        }
        for (std::size_t t = 0; t < T; ++t) {
            if (p.purchase_wh[t] < -balance_tol) report(sc.label, t, "negative purchase", p.purchase_wh[t]);
            if (p.excess_wh[t] < -balance_tol) report(sc.label, t, "negative excess", p.excess_wh[t]);
            if (p.level_wh[t] < -balance_tol) report(sc.label, t, "negative battery level", p.level_wh[t]);
            if (p.level_wh[t] > st.capacity_wh + balance_tol) {
                report(sc.label, t, "battery level above capacity", p.level_wh[t]);
            }
        }
        if (std::abs(p.level_wh.front() - st.initial_wh) > balance_tol) {
            report(sc.label, 0, "initial level mismatch", p.level_wh.front());
        }
        if (std::abs(p.level_wh.back() - st.terminal_wh) > balance_tol) {
            report(sc.label, T - 1, "terminal level mismatch", p.level_wh.back());
        }
    }
    return issues;
}

} // namespace greenbs
