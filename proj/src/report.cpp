#include "greenbs/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace greenbs {

std::string format_fixed(double value, int decimals) {
    if (std::isnan(value)) return "nan";
    if (value == 0.0) value = 0.0; // drop negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s(buf);
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
    return s;
}

void write_policy_csv(std::ostream& out, const PolicyTable& policy) {
    out << kPolicyHeader << '\n';
    for (const auto& sc : policy.scenarios) {
        for (std::size_t t = 0; t < sc.purchase_wh.size(); ++t) {
            out << sc.label << ',' << t + 1 << ',' << format_fixed(sc.purchase_wh[t], 6) << ','
                << format_fixed(sc.level_wh[t], 6) << ',' << format_fixed(sc.excess_wh[t], 6) << '\n';
        }
    }
}

void write_battery_csv(std::ostream& out, const std::vector<BatterySweepRow>& rows) {
    out << kBatteryHeader << '\n';
    for (const auto& r : rows) {
        out << format_fixed(r.capacity_wh, 3) << ',' << format_fixed(r.renewable_scale, 6) << ','
            << (r.monthly_cost_usd ? format_fixed(*r.monthly_cost_usd, 6) : std::string("infeasible"))
            << '\n';
    }
}

void write_cac_csv(std::ostream& out, const std::vector<CacSweepRow>& rows) {
    out << kCacHeader << '\n';
    for (const auto& r : rows) {
        out << r.threshold << ',' << format_fixed(r.blocking, 8) << ','
            << format_fixed(r.dropping, 8) << ',' << format_fixed(r.cost_saving_pct, 6) << '\n';
    }
}

void write_arrival_csv(std::ostream& out, const std::vector<ArrivalSweepRow>& rows) {
    out << kArrivalHeader << '\n';
    for (const auto& r : rows) {
        out << format_fixed(r.arrival_rate_per_min, 6) << ',' << format_fixed(r.avg_purchase_wh, 6)
            << ',' << format_fixed(r.avg_battery_wh, 6) << '\n';
    }
}

CsvDocument parse_csv(std::string_view text) {
    CsvDocument doc;
    auto split = [](std::string_view line) {
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            fields.emplace_back(line.substr(start, comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return fields;
    };
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        if (first) {
            doc.header = split(line);
            first = false;
        } else {
            doc.rows.push_back(split(line));
        }
    }
    return doc;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace greenbs
