#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "greenbs/policy_eval.hpp"
#include "greenbs/stochastic.hpp"

namespace greenbs {

inline constexpr std::string_view kVersion = "0.3.0";

inline constexpr std::string_view kPolicyHeader = "scenario_label,t,x_Wh,s_Wh,y_Wh";
inline constexpr std::string_view kBatteryHeader = "capacity_wh,renewable_scale,monthly_cost_usd";
inline constexpr std::string_view kCacHeader = "threshold,blocking,dropping,cost_saving_pct";
inline constexpr std::string_view kArrivalHeader =
    "arrival_rate_per_min,avg_purchase_wh,avg_battery_wh";
inline constexpr std::string_view kSimulationHeader = "day,scenario_label,cost_cents";

/// Fixed-point formatting independent of stream state and locale.
std::string format_fixed(double value, int decimals);

void write_policy_csv(std::ostream& out, const PolicyTable& policy);
void write_battery_csv(std::ostream& out, const std::vector<BatterySweepRow>& rows);
void write_cac_csv(std::ostream& out, const std::vector<CacSweepRow>& rows);
void write_arrival_csv(std::ostream& out, const std::vector<ArrivalSweepRow>& rows);

/// Splits CSV text into header fields and data rows (no quoting support).
struct CsvDocument {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvDocument parse_csv(std::string_view text);

/// 64-bit FNV-1a, used to fingerprint configurations in run manifests.
std::uint64_t fnv1a64(std::string_view bytes);

} // namespace greenbs
