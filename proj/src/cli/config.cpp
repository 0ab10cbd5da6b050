#include "config.hpp"

#include <fstream>
#include <sstream>

#include "greenbs/scenario_io.hpp"
#include "json.hpp"

namespace greenbs::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string() + ": cannot open " + what);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Section {
    const json& node;
    std::string path;
    const std::string& source;

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw InputError(source + ": key '" + (path.empty() ? key : path + "." + key) + "': " + what);
    }

    void only(std::initializer_list<std::string_view> allowed) const {
        if (!node.is_object()) {
            throw InputError(source + ": key '" + path + "': expected an object");
        }
        for (const auto& [key, value] : node.items()) {
            bool known = false;
            for (auto a : allowed) known |= key == a;
            if (!known) fail(key, "unknown key");
        }
    }

    void number(const char* key, double& target) const {
        if (!node.contains(key)) return;
        if (!node[key].is_number()) fail(key, "expected a number");
        target = node[key].get<double>();
    }

    void integer(const char* key, int& target) const {
        if (!node.contains(key)) return;
        if (!node[key].is_number_integer()) fail(key, "expected an integer");
        target = node[key].get<int>();
    }

    void boolean(const char* key, bool& target) const {
        if (!node.contains(key)) return;
        if (!node[key].is_boolean()) fail(key, "expected true or false");
        target = node[key].get<bool>();
    }

    Section child(const char* key) const {
        return Section{node.at(key), path.empty() ? key : path + "." + key, source};
    }
};

} // namespace

ParameterFile parse_parameter_text(std::string_view text, std::string_view source_name,
                                   const std::filesystem::path& base_dir) {
    const std::string source(source_name);
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": JSON syntax error");
    }
    const Section root{doc, "", source};
    root.only({"schema", "scenarios", "base_station", "storage", "traffic", "baseline", "seed",
               "nonanticipative", "physical_discharge"});
    if (!doc.contains("schema") || !doc["schema"].is_string()) root.fail("schema", "missing");
    if (doc["schema"].get<std::string>() != kConfigSchema) {
        root.fail("schema", "unsupported schema, expected '" + std::string(kConfigSchema) + "'");
    }

    ParameterFile pf;
    ExperimentConfig& c = pf.config;
    if (doc.contains("scenarios")) {
        if (!doc["scenarios"].is_string()) root.fail("scenarios", "expected a path string");
        std::filesystem::path p = doc["scenarios"].get<std::string>();
        pf.scenarios = p.is_absolute() ? p : base_dir / p;
    }
    if (doc.contains("base_station")) {
        const auto s = root.child("base_station");
        s.only({"e_static_w", "e_dynamic_w", "max_connections"});
        s.number("e_static_w", c.base_station.e_static_w);
        s.number("e_dynamic_w", c.base_station.e_dynamic_w);
        s.integer("max_connections", c.base_station.max_connections);
    }
    c.traffic_model.threshold = c.base_station.max_connections;
    if (doc.contains("storage")) {
        const auto s = root.child("storage");
        s.only({"capacity_wh", "initial_wh", "terminal_wh", "self_discharge", "loss_cost_cents_per_wh"});
        s.number("capacity_wh", c.storage.capacity_wh);
        s.number("initial_wh", c.storage.initial_wh);
        s.number("terminal_wh", c.storage.terminal_wh);
        s.number("self_discharge", c.storage.self_discharge);
        if (s.node.contains("loss_cost_cents_per_wh")) {
            double v = 0.0;
            s.number("loss_cost_cents_per_wh", v);
            c.storage.loss_cost_cents_per_wh = v;
        }
    }
    if (doc.contains("traffic")) {
        const auto s = root.child("traffic");
        s.only({"mean_holding_min", "handoff_fraction", "threshold", "replications", "warmup_min"});
        s.number("mean_holding_min", c.traffic_model.mean_holding_min);
        s.number("handoff_fraction", c.traffic_model.handoff_fraction);
        s.integer("threshold", c.traffic_model.threshold);
        s.integer("replications", c.traffic_model.replications);
        s.number("warmup_min", c.traffic_model.warmup_min);
    }
    if (doc.contains("baseline")) {
        const auto s = root.child("baseline");
        s.only({"battery_level_wh"});
        s.number("battery_level_wh", c.baseline_level_wh);
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) root.fail("seed", "expected a non-negative integer");
        c.seed = doc["seed"].get<std::uint64_t>();
    }
    root.boolean("nonanticipative", c.program.nonanticipative);
    root.boolean("physical_discharge", c.program.physical_discharge);

    try {
        c.base_station.validate();
        c.storage.validate();
    } catch (const InfeasibleProgram& e) {
        throw InfeasibleProgram(source + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(source + ": " + e.what());
    }
    if (c.traffic_model.replications < 1) root.fail("traffic.replications", "must be >= 1");
    if (c.traffic_model.threshold < 1 || c.traffic_model.threshold > c.base_station.max_connections) {
        root.fail("traffic.threshold", "must lie in [1, max_connections]");
    }
    return pf;
}

ExperimentConfig load_experiment(const RunConfig& run) {
    ExperimentConfig config;
    config.traffic_model.threshold = config.base_station.max_connections;
    std::optional<std::filesystem::path> scenarios = run.scenarios_path;
    if (run.config_path) {
        const std::string text = read_file(*run.config_path, "config file");
        ParameterFile pf = parse_parameter_text(text, run.config_path->string(),
                                                run.config_path->parent_path());
        config = std::move(pf.config);
        if (!scenarios) scenarios = pf.scenarios;
    }
    if (!scenarios) {
        throw InputError("no scenario file: pass --scenarios or set 'scenarios' in the config");
    }
    load_scenario_file(*scenarios).apply_to(config);

    if (run.seed) config.seed = *run.seed;
    if (run.nonanticipative) config.program.nonanticipative = true;
    if (run.physical_discharge) config.program.physical_discharge = true;
    return config;
}

std::string canonical_config(const ExperimentConfig& c) {
    json doc;
    doc["base_station"] = {{"e_static_w", c.base_station.e_static_w},
                           {"e_dynamic_w", c.base_station.e_dynamic_w},
                           {"max_connections", c.base_station.max_connections}};
    doc["storage"] = {{"capacity_wh", c.storage.capacity_wh},
                      {"initial_wh", c.storage.initial_wh},
                      {"terminal_wh", c.storage.terminal_wh},
                      {"self_discharge", c.storage.self_discharge}};
    if (c.storage.loss_cost_cents_per_wh) {
        doc["storage"]["loss_cost_cents_per_wh"] = *c.storage.loss_cost_cents_per_wh;
    }
    doc["traffic"] = {{"mean_holding_min", c.traffic_model.mean_holding_min},
                      {"handoff_fraction", c.traffic_model.handoff_fraction},
                      {"threshold", c.traffic_model.threshold},
                      {"replications", c.traffic_model.replications},
                      {"warmup_min", c.traffic_model.warmup_min}};
    doc["baseline"] = {{"battery_level_wh", c.baseline_level_wh}};
    doc["seed"] = c.seed;
    doc["nonanticipative"] = c.program.nonanticipative;
    doc["physical_discharge"] = c.program.physical_discharge;
    doc["scenarios"] = json::parse(dump_scenario_file(ScenarioFile::from_config(c)));
    return doc.dump();
}

} // namespace greenbs::cli
