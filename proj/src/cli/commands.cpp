#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "greenbs/policy_eval.hpp"
#include "greenbs/random.hpp"
#include "greenbs/report.hpp"
#include "greenbs/scenario_io.hpp"
#include "json.hpp"

namespace greenbs::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string general(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir.string() + ": cannot create output directory: " + ec.message());
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw IoError((dir / name).string() + ": cannot open for writing");
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw IoError(path.string() + ": write failed");
}

void write_manifest(const fs::path& dir, const std::string& command,
                    const ExperimentConfig& config) {
    auto out = open_output(dir, "manifest.txt");
    out << "tool greenbs " << kVersion << '\n'
        << "command " << command << '\n'
        << "config_hash fnv1a64:" << hex64(fnv1a64(canonical_config(config))) << '\n'
        << "seed " << config.seed << '\n'
        << "nonanticipative " << (config.program.nonanticipative ? "true" : "false") << '\n'
        << "physical_discharge " << (config.program.physical_discharge ? "true" : "false") << '\n';
    for (const char* module : {"core_units", "power_model", "scenario_model", "traffic_sim",
                               "lp_core", "stochastic_program", "policy_eval", "cli"}) {
        out << "module " << module << ' ' << kVersion << '\n';
    }
    finish(out, dir / "manifest.txt");
}

struct CommonFlags {
    std::string config;
    std::string scenarios;
    std::string out = ".";
    std::uint64_t seed = 0;
    bool nonanticipative = false;
    bool physical_discharge = false;
    CLI::Option* seed_opt = nullptr;

    void attach(CLI::App* app) {
        app->add_option("--config", config, "Parameter file (JSON)");
        app->add_option("--scenarios", scenarios, "Scenario file (JSON)");
        app->add_option("--out", out, "Output directory");
        seed_opt = app->add_option("--seed", seed, "Random seed (u64)");
        app->add_flag("--nonanticipative", nonanticipative,
                      "Share first-period purchases across scenarios with equal period-1 data");
        app->add_flag("--physical-discharge", physical_discharge,
                      "Apply self-discharge to stored energy in the balance equation");
    }

    RunConfig run_config() const {
        RunConfig rc;
        if (!config.empty()) rc.config_path = config;
        if (!scenarios.empty()) rc.scenarios_path = scenarios;
        rc.out_dir = out;
        if (seed_opt && seed_opt->count() > 0) rc.seed = seed;
        rc.nonanticipative = nonanticipative;
        rc.physical_discharge = physical_discharge;
        return rc;
    }
};

int cmd_solve(const CommonFlags& flags, const std::string& lp_export, std::ostream& out) {
    const RunConfig rc = flags.run_config();
    const ExperimentConfig config = load_experiment(rc);
    const ScenarioSpace space = build_scenario_space(config);

    if (!lp_export.empty()) {
        const auto de = build_deterministic_equivalent(config.horizon, config.storage, space,
                                                       config.program);
        auto lp_out = open_output(rc.out_dir, lp_export);
        write_lp_text(de.lp, lp_out);
        finish(lp_out, rc.out_dir / lp_export);
    }

    const PolicyTable policy = solve_policy(config.horizon, config.storage, space, config.program);
    const auto issues = verify_policy(policy, space);
    if (!issues.empty()) {
        throw std::runtime_error("solver returned a policy that fails verification: " + issues.front());
    }
    auto csv = open_output(rc.out_dir, "policy.csv");
    write_policy_csv(csv, policy);
    finish(csv, rc.out_dir / "policy.csv");
    write_manifest(rc.out_dir, "solve", config);

    const double baseline =
        expected_baseline_cost(config.horizon, config.storage, space, config.baseline_level_wh);
    out << "scenarios: " << space.size() << '\n'
        << "expected daily cost: " << format_fixed(policy.expected_cost_cents, 4) << " cents\n"
        << "expected monthly cost: $" << format_fixed(monthly_cost(policy.expected_cost_cents), 2) << '\n'
        << "baseline monthly cost: $" << format_fixed(monthly_cost(baseline), 2) << '\n'
        << "policy written to " << (rc.out_dir / "policy.csv").string() << '\n';
    return kExitOk;
}

int cmd_simulate(const CommonFlags& flags, int days, const std::string& forced, std::ostream& out) {
    if (days < 1) throw UsageError("--days must be at least 1");
    const RunConfig rc = flags.run_config();
    const ExperimentConfig config = load_experiment(rc);
    const ScenarioSpace space = build_scenario_space(config);
    const PolicyTable policy = solve_policy(config.horizon, config.storage, space, config.program);

    std::size_t forced_index = space.size();
    if (!forced.empty()) {
        for (std::size_t w = 0; w < space.size(); ++w) {
            if (space.scenarios[w].label == forced) forced_index = w;
        }
        if (forced_index == space.size()) throw UsageError("no scenario labelled '" + forced + "'");
    }

    std::mt19937_64 rng(derive_seed(config.seed, 0x5117));
    auto csv = open_output(rc.out_dir, "simulation.csv");
    csv << kSimulationHeader << '\n';
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int d = 0; d < days; ++d) {
        std::size_t w = forced_index;
        if (w == space.size()) {
            const double u = uniform01(rng);
            double acc = 0.0;
            w = space.size() - 1;
            for (std::size_t i = 0; i < space.size(); ++i) {
                acc += space.scenarios[i].probability;
                if (u < acc) {
                    w = i;
                    break;
                }
            }
        }
        const DayOutcome day = evaluate_policy(policy, RealizedDay::from(space.scenarios[w]));
        sum += day.cost_cents;
        sum_sq += day.cost_cents * day.cost_cents;
        csv << d + 1 << ',' << space.scenarios[w].label << ',' << format_fixed(day.cost_cents, 6) << '\n';
    }
    finish(csv, rc.out_dir / "simulation.csv");
    write_manifest(rc.out_dir, "simulate", config);

    const double mean = sum / days;
    const double var = days > 1 ? std::max(0.0, (sum_sq - days * mean * mean) / (days - 1)) : 0.0;
    const double se = std::sqrt(var / days);
    out << "days: " << days << '\n'
        << "expected daily cost: " << format_fixed(policy.expected_cost_cents, 4) << " cents\n"
        << "realized mean daily cost: " << format_fixed(mean, 4) << " cents (SE "
        << format_fixed(se, 4) << ")\n"
        << "realized monthly cost: $" << format_fixed(monthly_cost(mean), 2) << '\n';
    return kExitOk;
}

int cmd_sweep(const CommonFlags& flags, const std::string& kind, const std::string& grid_spec,
              const std::string& scales_spec, std::ostream& out) {
    const std::vector<double> grid = parse_grid(grid_spec);
    const RunConfig rc = flags.run_config();
    const ExperimentConfig config = load_experiment(rc);
    const std::string name = "sweep_" + kind + ".csv";

    if (kind == "battery") {
        const auto rows = sweep_battery(grid, parse_grid(scales_spec), config);
        auto csv = open_output(rc.out_dir, name);
        write_battery_csv(csv, rows);
        finish(csv, rc.out_dir / name);
    } else if (kind == "cac") {
        if (!config.traffic) throw UsageError("cac sweep needs a 'traffic' scenario space");
        std::vector<int> thresholds;
        for (double g : grid) {
            if (g != std::floor(g)) throw UsageError("cac thresholds must be integers");
            thresholds.push_back(static_cast<int>(g));
        }
        for (int t : thresholds) {
            if (t < 1 || t > config.base_station.max_connections) {
                throw UsageError("cac threshold " + std::to_string(t) + " outside [1, " +
                                 std::to_string(config.base_station.max_connections) + "]");
            }
        }
        const auto rows = sweep_cac(thresholds, config);
        auto csv = open_output(rc.out_dir, name);
        write_cac_csv(csv, rows);
        finish(csv, rc.out_dir / name);
        if (const auto pick = select_threshold(rows, 0.1)) {
            out << "smallest threshold with new-connection blocking < 0.1: " << *pick << '\n';
        }
    } else {
        const auto rows = sweep_arrival_rate(grid, config);
        auto csv = open_output(rc.out_dir, name);
        write_arrival_csv(csv, rows);
        finish(csv, rc.out_dir / name);
    }
    write_manifest(rc.out_dir, "sweep " + kind, config);
    out << "sweep written to " << (rc.out_dir / name).string() << '\n';
    return kExitOk;
}

std::vector<double> read_counts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open counts file");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::vector<double> counts;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error&) {
            throw InputError(path + ": counts must be a JSON array of numbers");
        }
        for (const auto& v : doc) {
            if (!v.is_number()) throw InputError(path + ": counts must be numbers");
            counts.push_back(v.get<double>());
        }
        return counts;
    }
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream words(text);
    std::string word;
    while (words >> word) {
        try {
            std::size_t used = 0;
            counts.push_back(std::stod(word, &used));
            if (used != word.size()) throw std::invalid_argument(word);
        } catch (const std::exception&) {
            throw InputError(path + ": '" + word + "' is not a number");
        }
    }
    return counts;
}

int cmd_estimate_probs(const std::string& path, std::ostream& out) {
    const auto counts = read_counts(path);
    std::vector<double> probs;
    try {
        probs = estimate_probabilities(counts);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    for (double p : probs) out << general(p) << '\n';
    return kExitOk;
}

} // namespace

std::vector<double> parse_grid(const std::string& spec) {
    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw UsageError("grid value '" + s + "' is not a number");
        }
    };
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw UsageError("range grid must be start:stop:step");
        const double start = number(parts[0]);
        const double stop = number(parts[1]);
        const double step = number(parts[2]);
        if (!(step > 0.0) || stop < start) throw UsageError("range grid needs step > 0 and stop >= start");
        const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        for (long i = 0; i <= n; ++i) values.push_back(start + static_cast<double>(i) * step);
    } else {
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ',');) {
            if (!p.empty()) values.push_back(number(p));
        }
    }
    if (values.empty()) throw UsageError("empty grid");
    return values;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stochastic power management for a renewable-assisted base station", "greenbs"};
    app.require_subcommand(1);

    CommonFlags solve_flags;
    std::string lp_export;
    auto* solve = app.add_subcommand("solve", "Solve the stochastic program and write policy.csv");
    solve_flags.attach(solve);
    solve->add_option("--export-lp", lp_export, "Also write the LP in CPLEX LP format to this file");

    CommonFlags sim_flags;
    int days = 1000;
    std::string forced;
    auto* simulate = app.add_subcommand("simulate", "Replay the policy over sampled days");
    sim_flags.attach(simulate);
    simulate->add_option("--days", days, "Number of sampled days");
    simulate->add_option("--scenario", forced, "Force every day to this scenario label");

    CommonFlags sweep_flags;
    std::string kind;
    std::string grid;
    std::string scales = "1";
    auto* sweep = app.add_subcommand("sweep", "Parameter sweeps: battery | cac | arrival");
    sweep_flags.attach(sweep);
    sweep->add_option("kind", kind, "Sweep kind")
        ->required()
        ->check(CLI::IsMember({"battery", "cac", "arrival"}));
    sweep->add_option("--grid", grid, "Values: a,b,c or start:stop:step")->required();
    sweep->add_option("--scales", scales, "Renewable scalings for the battery sweep");

    std::string counts_path;
    auto* estimate = app.add_subcommand("estimate-probs", "Scenario probabilities from day counts");
    estimate->add_option("counts", counts_path, "File of non-negative counts")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_flags, lp_export, out);
        if (simulate->parsed()) return cmd_simulate(sim_flags, days, forced, out);
        if (sweep->parsed()) return cmd_sweep(sweep_flags, kind, grid, scales, out);
        return cmd_estimate_probs(counts_path, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const InfeasibleProgram& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace greenbs::cli
