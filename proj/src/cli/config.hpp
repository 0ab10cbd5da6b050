#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "greenbs/experiment.hpp"

namespace greenbs::cli {

inline constexpr std::string_view kConfigSchema = "greenbs.config/1";

/// Command-line view of a run.
struct RunConfig {
    std::optional<std::filesystem::path> config_path;
    std::optional<std::filesystem::path> scenarios_path;
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;
    bool nonanticipative = false;
    bool physical_discharge = false;
};

/// Parameter document. Every key is optional; unknown keys are rejected.
///
///   {
///     "schema": "greenbs.config/1",
///     "scenarios": "study_scenarios.json",          // relative to this file
///     "base_station": {"e_static_w", "e_dynamic_w", "max_connections"},
///     "storage": {"capacity_wh", "initial_wh", "terminal_wh", "self_discharge",
///                 "loss_cost_cents_per_wh"},
///     "traffic": {"mean_holding_min", "handoff_fraction", "threshold",
///                 "replications", "warmup_min"},
///     "baseline": {"battery_level_wh"},
///     "seed": 1, "nonanticipative": false, "physical_discharge": false
///   }
struct ParameterFile {
    ExperimentConfig config;
    std::optional<std::filesystem::path> scenarios; // resolved against the file's directory
};

ParameterFile parse_parameter_text(std::string_view text, std::string_view source,
                                   const std::filesystem::path& base_dir = {});

/// Parameters first, then scenarios, then command-line overrides.
ExperimentConfig load_experiment(const RunConfig& run);

/// Canonical JSON of everything that determines results; hashed into manifests.
std::string canonical_config(const ExperimentConfig& config);

} // namespace greenbs::cli
