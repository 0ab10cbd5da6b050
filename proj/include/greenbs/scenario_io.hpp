#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "greenbs/experiment.hpp"
#include "greenbs/scenario.hpp"

namespace greenbs {

inline constexpr std::string_view kScenarioSchema = "greenbs.scenarios/1";

/// Malformed input file. The message names the file, and the line or key.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Contents of a scenario document.
///
///   {
///     "schema": "greenbs.scenarios/1",
///     "horizon": {"T": 24, "period_length_h": 1.0},
///     "price":       {"scenarios": [{"label": .., "probability": .., "values": [..]}]},
///     "renewable":   {"scenarios": [...]},
///     "consumption": {"scenarios": [...]}      // or
///     "traffic":     {"scenarios": [...]}      // values = arrivals per minute
///   }
///
/// A fully joint space may be given instead as "joint": {"scenarios": [{"label",
/// "probability", "price", "renewable", "consumption"}]}.
struct ScenarioFile {
    Horizon horizon{24};
    std::optional<MarginalSpace> price;
    std::optional<MarginalSpace> renewable;
    std::optional<MarginalSpace> consumption;
    std::optional<TrafficSpace> traffic;
    std::optional<ScenarioSpace> joint;

    bool operator==(const ScenarioFile&) const = default;

    /// Copies the scenario data into `config` (horizon and spaces).
    void apply_to(ExperimentConfig& config) const;
    static ScenarioFile from_config(const ExperimentConfig& config);
};

ScenarioFile parse_scenario_text(std::string_view text, std::string_view source = "<input>");
std::string dump_scenario_file(const ScenarioFile& file);

ScenarioFile load_scenario_file(const std::filesystem::path& path);
void save_scenario_file(const std::filesystem::path& path, const ScenarioFile& file);

/// Line and column (1-based) of a byte offset in `text`.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset);

} // namespace greenbs
