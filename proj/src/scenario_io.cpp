#include "greenbs/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace greenbs {

using nlohmann::json;

namespace {

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& what) const {
        throw InputError(source_ + ": key '" + path + "': " + what);
    }

    void only_keys(const json& obj, const std::string& path,
                   std::initializer_list<std::string_view> allowed) const {
        if (!obj.is_object()) fail(path, "expected an object");
        for (const auto& [key, value] : obj.items()) {
            bool known = false;
            for (auto a : allowed) known |= (key == a);
            if (!known) fail(join(path, key), "unknown key");
        }
    }

    const json& need(const json& obj, const std::string& path, const char* key) const {
        if (!obj.contains(key)) fail(join(path, key), "missing");
        return obj.at(key);
    }

    double number(const json& v, const std::string& path) const {
        if (!v.is_number()) fail(path, "expected a number");
        return v.get<double>();
    }

    std::string text(const json& v, const std::string& path) const {
        if (!v.is_string()) fail(path, "expected a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const json& v, const std::string& path) const {
        if (!v.is_array()) fail(path, "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    const json& scenario_list(const json& section, const std::string& path) const {
        only_keys(section, path, {"scenarios"});
        const json& list = need(section, path, "scenarios");
        if (!list.is_array()) fail(path + ".scenarios", "expected an array");
        return list;
    }

    MarginalSpace marginal(const json& section, const std::string& path, MarginalKind kind) const {
        MarginalSpace space{kind, {}};
        const json& list = scenario_list(section, path);
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string p = path + ".scenarios[" + std::to_string(i) + "]";
            only_keys(list[i], p, {"label", "probability", "values"});
            space.scenarios.push_back({text(need(list[i], p, "label"), p + ".label"),
                                       numbers(need(list[i], p, "values"), p + ".values"),
                                       number(need(list[i], p, "probability"), p + ".probability")});
        }
        return space;
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

private:
    std::string source_;
};

json marginal_json(const std::vector<MarginalScenario>& scenarios) {
    json list = json::array();
    for (const auto& s : scenarios) {
        list.push_back({{"label", s.label}, {"probability", s.probability}, {"values", s.values}});
    }
    return json{{"scenarios", list}};
}

} // namespace

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

ScenarioFile parse_scenario_text(std::string_view text, std::string_view source) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw InputError(std::string(source) + ":" + std::to_string(line) + ":" +
                         std::to_string(col) + ": JSON syntax error");
    }
    Reader r{std::string(source)};
    r.only_keys(doc, "", {"schema", "horizon", "price", "renewable", "consumption", "traffic", "joint"});
    const std::string schema = r.text(r.need(doc, "", "schema"), "schema");
    if (schema != kScenarioSchema) {
        r.fail("schema", "unsupported schema '" + schema + "', expected '" +
                             std::string(kScenarioSchema) + "'");
    }

    const json& h = r.need(doc, "", "horizon");
    r.only_keys(h, "horizon", {"T", "period_length_h"});
    const json& t = r.need(h, "horizon", "T");
    if (!t.is_number_integer() || t.get<long long>() < 2) {
        r.fail("horizon.T", "expected an integer >= 2");
    }
    double length = 1.0;
    if (h.contains("period_length_h")) {
        length = r.number(h.at("period_length_h"), "horizon.period_length_h");
        if (!(length > 0.0)) r.fail("horizon.period_length_h", "must be positive");
    }

    ScenarioFile file;
    file.horizon = Horizon(t.get<std::size_t>(), length);
    if (doc.contains("price")) file.price = r.marginal(doc["price"], "price", MarginalKind::price);
    if (doc.contains("renewable")) {
        file.renewable = r.marginal(doc["renewable"], "renewable", MarginalKind::renewable);
    }
    if (doc.contains("consumption")) {
        file.consumption = r.marginal(doc["consumption"], "consumption", MarginalKind::consumption);
    }
    if (doc.contains("traffic")) {
        const MarginalSpace rates = r.marginal(doc["traffic"], "traffic", MarginalKind::consumption);
        TrafficSpace traffic;
        for (const auto& s : rates.scenarios) traffic.scenarios.push_back({s.label, s.values, s.probability});
        file.traffic = traffic;
    }
    if (doc.contains("joint")) {
        const json& list = r.scenario_list(doc["joint"], "joint");
        ScenarioSpace joint;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string p = "joint.scenarios[" + std::to_string(i) + "]";
            r.only_keys(list[i], p, {"label", "probability", "price", "renewable", "consumption"});
            joint.scenarios.push_back({r.text(r.need(list[i], p, "label"), p + ".label"),
                                       r.numbers(r.need(list[i], p, "price"), p + ".price"),
                                       r.numbers(r.need(list[i], p, "renewable"), p + ".renewable"),
                                       r.numbers(r.need(list[i], p, "consumption"), p + ".consumption"),
                                       r.number(r.need(list[i], p, "probability"), p + ".probability")});
        }
        file.joint = joint;
    }

    if (file.joint) {
        if (file.price || file.renewable || file.consumption || file.traffic) {
            r.fail("joint", "a joint space cannot be combined with marginal spaces");
        }
    } else {
        if (!file.price) r.fail("price", "missing");
        if (!file.renewable) r.fail("renewable", "missing");
        if (file.consumption.has_value() == file.traffic.has_value()) {
            r.fail("consumption", "give exactly one of 'consumption' or 'traffic'");
        }
    }
    return file;
}

std::string dump_scenario_file(const ScenarioFile& file) {
    json doc;
    doc["schema"] = kScenarioSchema;
    doc["horizon"] = {{"T", file.horizon.periods()}, {"period_length_h", file.horizon.period_length_h()}};
    if (file.price) doc["price"] = marginal_json(file.price->scenarios);
    if (file.renewable) doc["renewable"] = marginal_json(file.renewable->scenarios);
    if (file.consumption) doc["consumption"] = marginal_json(file.consumption->scenarios);
    if (file.traffic) {
        std::vector<MarginalScenario> rates;
        for (const auto& s : file.traffic->scenarios) rates.push_back({s.label, s.rate, s.probability});
        doc["traffic"] = marginal_json(rates);
    }
    if (file.joint) {
        json list = json::array();
        for (const auto& s : file.joint->scenarios) {
            list.push_back({{"label", s.label},
                            {"probability", s.probability},
                            {"price", s.price},
                            {"renewable", s.renewable},
                            {"consumption", s.consumption}});
        }
        doc["joint"] = json{{"scenarios", list}};
    }
    return doc.dump(2) + "\n";
}

void ScenarioFile::apply_to(ExperimentConfig& config) const {
    config.horizon = horizon;
    config.joint = joint;
    if (price) config.price = *price;
    if (renewable) config.renewable = *renewable;
    config.consumption = consumption;
    config.traffic = traffic;
}

ScenarioFile ScenarioFile::from_config(const ExperimentConfig& config) {
    ScenarioFile file;
    file.horizon = config.horizon;
    if (config.joint) {
        file.joint = config.joint;
        return file;
    }
    file.price = config.price;
    file.renewable = config.renewable;
    file.consumption = config.consumption;
    file.traffic = config.traffic;
    return file;
}

ScenarioFile load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string() + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path.string());
}

void save_scenario_file(const std::filesystem::path& path, const ScenarioFile& file) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string() + ": cannot write scenario file");
    out << dump_scenario_file(file);
}

} // namespace greenbs
