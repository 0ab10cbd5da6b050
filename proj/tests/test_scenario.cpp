#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "greenbs/experiment.hpp"
#include "greenbs/scenario.hpp"
#include "greenbs/scenario_io.hpp"
#include "oracles.hpp"

using namespace greenbs;

namespace {

MarginalSpace flat_space(MarginalKind kind, std::vector<double> probs, std::size_t periods = 4,
                         double level = 10.0) {
    MarginalSpace space{kind, {}};
    for (std::size_t i = 0; i < probs.size(); ++i) {
        space.scenarios.push_back({std::string(to_string(kind)) + std::to_string(i),
                                   std::vector<double>(periods, level + static_cast<double>(i)),
                                   probs[i]});
    }
    return space;
}

bool mentions(const std::vector<std::string>& issues, const std::string& needle) {
    return std::any_of(issues.begin(), issues.end(),
                       [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

const char* kMinimalFile = R"({
  "schema": "greenbs.scenarios/1",
  "horizon": {"T": 2},
  "price": {"scenarios": [{"label": "flat", "probability": 1, "values": [12, 12]}]},
  "renewable": {"scenarios": [{"label": "none", "probability": 1, "values": [0, 0]}]},
  "consumption": {"scenarios": [{"label": "idle", "probability": 1, "values": [194.25, 194.25]}]}
})";

} // namespace

TEST_CASE("probability estimation from counts") {
    const std::vector<double> a{15, 45};
    CHECK(estimate_probabilities(a) == std::vector<double>{0.25, 0.75});
    const std::vector<double> b{60};
    CHECK(estimate_probabilities(b) == std::vector<double>{1.0});
    const std::vector<double> c{1, 1, 2};
    CHECK(estimate_probabilities(c) == std::vector<double>{0.25, 0.25, 0.5});

    const std::vector<double> zeros{0, 0};
    CHECK_THROWS_AS(estimate_probabilities(zeros), std::invalid_argument);
    const std::vector<double> negative{3, -1};
    CHECK_THROWS_AS(estimate_probabilities(negative), std::invalid_argument);
    CHECK_THROWS_AS(estimate_probabilities(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("probability estimation is scale invariant and normalized") {
    oracle::Gen g(11);
    for (int k = 0; k < 200; ++k) {
        std::vector<double> counts(g.integer(1, 8));
        for (double& c : counts) c = g.integer(0, 100);
        counts[0] += 1;
        std::vector<double> scaled = counts;
        const double factor = g.integer(2, 50);
        for (double& c : scaled) c *= factor;
        const auto p = estimate_probabilities(counts);
        const auto q = estimate_probabilities(scaled);
        double mass = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(p[i] == doctest::Approx(q[i]).epsilon(1e-14));
            mass += p[i];
        }
        CHECK(std::abs(mass - 1.0) <= 1e-12);
    }
}

TEST_CASE("composition sizes and probabilities") {
    const auto joint = compose(flat_space(MarginalKind::price, {0.6, 0.4}),
                               flat_space(MarginalKind::renewable, {0.6, 0.4}),
                               flat_space(MarginalKind::consumption, {1.0}));
    REQUIRE(joint.size() == 4);
    const double expected[] = {0.36, 0.24, 0.24, 0.16};
    for (std::size_t i = 0; i < 4; ++i) CHECK(joint.scenarios[i].probability == doctest::Approx(expected[i]));
    CHECK(joint.scenarios[1].label == "price0/renewable1/consumption0");
    CHECK(joint.scenarios[1].renewable == std::vector<double>(4, 11.0));

    const auto twenty = compose(flat_space(MarginalKind::price, {0.6, 0.4}),
                                flat_space(MarginalKind::renewable, {0.6, 0.4}),
                                flat_space(MarginalKind::consumption, {0.1, 0.1, 0.2, 0.2, 0.4}));
    CHECK(twenty.size() == 20);
    CHECK(validate(twenty, Horizon(4)).empty());

    const auto single = compose(flat_space(MarginalKind::price, {1.0}),
                                flat_space(MarginalKind::renewable, {1.0}),
                                flat_space(MarginalKind::consumption, {1.0}));
    REQUIRE(single.size() == 1);
    CHECK(single.scenarios[0].probability == 1.0);
}

TEST_CASE("composition preserves mass and cardinality") {
    oracle::Gen g(5);
    for (int k = 0; k < 100; ++k) {
        std::vector<MarginalSpace> spaces;
        std::size_t product = 1;
        for (auto kind : {MarginalKind::price, MarginalKind::renewable, MarginalKind::consumption}) {
            std::vector<double> counts(g.integer(1, 5));
            for (double& c : counts) c = g.integer(1, 20);
            spaces.push_back(flat_space(kind, estimate_probabilities(counts), 3));
            product *= counts.size();
        }
        const auto joint = compose(spaces[0], spaces[1], spaces[2]);
        CHECK(joint.size() == product);
        CHECK(std::abs(joint.total_probability() - 1.0) <= 1e-12);
    }
}

TEST_CASE("composition rejects mismatched marginals") {
    auto price = flat_space(MarginalKind::price, {1.0}, 4);
    auto renewable = flat_space(MarginalKind::renewable, {1.0}, 3);
    auto consumption = flat_space(MarginalKind::consumption, {1.0}, 4);
    CHECK_THROWS_AS(compose(price, renewable, consumption), std::invalid_argument);
    renewable = flat_space(MarginalKind::renewable, {0.5, 0.4}, 4);
    CHECK_THROWS_AS(compose(price, renewable, consumption), std::invalid_argument);
    CHECK_THROWS_AS(compose(price, MarginalSpace{MarginalKind::renewable, {}}, consumption),
                    std::invalid_argument);
}

TEST_CASE("validation diagnostics") {
    auto space = compose(flat_space(MarginalKind::price, {0.5, 0.5}),
                         flat_space(MarginalKind::renewable, {1.0}),
                         flat_space(MarginalKind::consumption, {1.0}));
    CHECK(validate(space, Horizon(4)).empty());

    auto light = space;
    light.scenarios[0].probability = 0.4;
    const auto mass = validate(light, Horizon(4));
    CHECK(mentions(mass, "probability mass 0.9 != 1"));
    CHECK_THROWS_AS(require_valid(light, Horizon(4)), std::invalid_argument);

    auto short_trace = space;
    short_trace.scenarios[1].consumption.pop_back();
    const auto length = validate(short_trace, Horizon(4));
    CHECK(mentions(length, space.scenarios[1].label));
    CHECK(mentions(length, "length 3"));

    auto negative = space;
    negative.scenarios[0].price[2] = -1.0;
    CHECK(mentions(validate(negative, Horizon(4)), "t=3"));

    CHECK(mentions(validate(ScenarioSpace{}, Horizon(4)), "empty"));
}

TEST_CASE("scenario file parsing") {
    const auto file = parse_scenario_text(kMinimalFile, "mini.json");
    CHECK(file.horizon.periods() == 2);
    REQUIRE(file.price);
    CHECK(file.price->scenarios[0].values == std::vector<double>{12, 12});
    CHECK(!file.traffic);

    ExperimentConfig config;
    file.apply_to(config);
    const auto space = build_scenario_space(config);
    REQUIRE(space.size() == 1);
    CHECK(space.scenarios[0].label == "flat/none/idle");
}

TEST_CASE("malformed scenario files name the problem") {
    std::string unknown = kMinimalFile;
    unknown.replace(unknown.find("\"values\": [12, 12]"), 18, "\"valuez\": [12, 12]");
    try {
        parse_scenario_text(unknown, "bad.json");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bad.json") != std::string::npos);
        CHECK(msg.find("price.scenarios[0].valuez") != std::string::npos);
    }

    try {
        parse_scenario_text("{\n  \"schema\": \"greenbs.scenarios/1\",\n  \"horizon\": {\"T\": 2,}\n}", "syntax.json");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("syntax.json:3:") != std::string::npos);
    }

    std::string wrong_schema = kMinimalFile;
    wrong_schema.replace(wrong_schema.find("scenarios/1"), 11, "scenarios/9");
    CHECK_THROWS_AS(parse_scenario_text(wrong_schema), InputError);

    std::string no_consumption = kMinimalFile;
    no_consumption.replace(no_consumption.find("\"consumption\""), 13, "\"traffic\"");
    CHECK_NOTHROW(parse_scenario_text(no_consumption));

    CHECK_THROWS_AS(load_scenario_file("/nonexistent/greenbs.json"), IoError);
}

TEST_CASE("line and column lookup") {
    const std::string text = "ab\ncd\n";
    CHECK(line_column(text, 0) == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(line_column(text, 4) == std::pair<std::size_t, std::size_t>{2, 2});
}

TEST_CASE("scenario files round-trip") {
    const auto config = study_config();
    const auto file = ScenarioFile::from_config(config);
    const auto text = dump_scenario_file(file);
    CHECK(parse_scenario_text(text) == file);

    oracle::Gen g(8);
    for (int k = 0; k < 50; ++k) {
        ScenarioFile random;
        random.horizon = Horizon(static_cast<std::size_t>(g.integer(2, 6)));
        const std::size_t T = random.horizon.periods();
        ScenarioSpace joint;
        for (int s = g.integer(1, 4); s > 0; --s) {
            CompositeScenario c;
            c.label = "s" + std::to_string(s);
            c.probability = g.real(0.0, 1.0);
            for (std::size_t t = 0; t < T; ++t) {
                c.price.push_back(g.real(0.0, 40.0));
                c.renewable.push_back(g.real(0.0, 300.0));
                c.consumption.push_back(g.real(150.0, 800.0));
            }
            joint.scenarios.push_back(c);
        }
        random.joint = joint;
        CHECK(parse_scenario_text(dump_scenario_file(random)) == random);
    }

    const auto path = std::filesystem::temp_directory_path() / "greenbs_roundtrip.json";
    save_scenario_file(path, file);
    CHECK(load_scenario_file(path) == file);
    std::filesystem::remove(path);
}

TEST_CASE("shipped scenario data matches the built-in calibration") {
    const auto file = load_scenario_file(std::filesystem::path(GREENBS_DATA_DIR) / "study_scenarios.json");
    CHECK(file == ScenarioFile::from_config(study_config()));
}

TEST_CASE("calibration profiles") {
    const auto solar = half_sine_profile(195.0, 6.0, 18.0);
    double total = 0.0;
    for (double v : solar) total += v;
    CHECK(total == doctest::Approx(195.0 * 12.0));
    CHECK(solar[3] == 0.0);
    CHECK(solar[20] == 0.0);
    // symmetric about noon
    CHECK(solar[8] == doctest::Approx(solar[15]));

    const auto price = window_profile(12.0, 20.0, 12.0, 20.0);
    CHECK(price[11] == 12.0);
    CHECK(price[12] == 20.0);
    CHECK(price[19] == 20.0);
    CHECK(price[20] == 12.0);

    const auto config = study_config();
    CHECK(config.price.scenarios.size() == 2);
    CHECK(config.renewable.scenarios.size() == 2);
    REQUIRE(config.traffic);
    CHECK(config.traffic->scenarios.size() == 5);
}
