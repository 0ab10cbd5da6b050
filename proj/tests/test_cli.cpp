#include <stdexcept>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "greenbs/report.hpp"

namespace fs = std::filesystem;
using namespace greenbs;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = cli::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

class TempDir {
public:
    explicit TempDir(const std::string& name)
        : path_(fs::temp_directory_path() / ("greenbs_cli_" + name)) {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }
    std::string operator/(const std::string& leaf) const { return (path_ / leaf).string(); }

private:
    fs::path path_;
};

const std::string kStudyConfig = std::string(GREENBS_DATA_DIR) + "/study_config.json";

const char* kSingleton = R"({
  "schema": "greenbs.scenarios/1",
  "horizon": {"T": 3},
  "price": {"scenarios": [{"label": "p", "probability": 1, "values": [10, 30, 30]}]},
  "renewable": {"scenarios": [{"label": "r", "probability": 1, "values": [0, 0, 0]}]},
  "consumption": {"scenarios": [{"label": "c", "probability": 1, "values": [100, 500, 0]}]}
})";

std::string header_line(const CsvDocument& csv) {
    std::string line;
    for (const auto& h : csv.header) line += (line.empty() ? "" : ",") + h;
    return line;
}

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("grid specifications") {
    CHECK(cli::parse_grid("1,2,3") == std::vector<double>{1, 2, 3});
    CHECK(cli::parse_grid("500:1000:250") == std::vector<double>{500, 750, 1000});
    CHECK(cli::parse_grid("0:0.3:0.1").size() == 4);
    CHECK_THROWS(cli::parse_grid(","));
    CHECK_THROWS(cli::parse_grid(""));
    CHECK_THROWS(cli::parse_grid("1:2"));
    CHECK_THROWS(cli::parse_grid("2:1:1"));
    CHECK_THROWS(cli::parse_grid("a,b"));
}

TEST_CASE("estimate-probs") {
    TempDir dir("estimate");
    write_file(dir / "a.txt", "15 45\n");
    auto r = run({"estimate-probs", dir / "a.txt"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "0.25\n0.75\n");

    write_file(dir / "b.json", "[60]");
    r = run({"estimate-probs", dir / "b.json"});
    CHECK(r.out == "1\n");

    write_file(dir / "c.txt", "0,0");
    CHECK(run({"estimate-probs", dir / "c.txt"}).code == cli::kExitUsage);
    write_file(dir / "d.txt", "3 x");
    CHECK(run({"estimate-probs", dir / "d.txt"}).code == cli::kExitUsage);
    CHECK(run({"estimate-probs", dir / "missing.txt"}).code == cli::kExitIo);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"sweep", "battery"}).code == cli::kExitUsage);
    CHECK(run({"sweep", "teleport", "--grid", "1"}).code == cli::kExitUsage);
    CHECK(run({"solve"}).code == cli::kExitUsage); // no scenarios anywhere
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("singleton solve and replay") {
    TempDir dir("singleton");
    write_file(dir / "s.json", kSingleton);
    auto r = run({"solve", "--scenarios", dir / "s.json", "--out", dir / "out", "--export-lp", dir / "out/p.lp"});
    REQUIRE(r.code == cli::kExitOk);
    const auto csv = parse_csv(slurp(dir.path() / "out/policy.csv"));
    CHECK(header_line(csv) == std::string(kPolicyHeader));
    CHECK(csv.rows.size() == 3);
    CHECK(csv.rows[0][0] == "p/r/c");
    CHECK(fs::exists(dir.path() / "out/p.lp"));
    const std::string manifest = slurp(dir.path() / "out/manifest.txt");
    CHECK(manifest.find("config_hash fnv1a64:") != std::string::npos);
    CHECK(manifest.find("seed 1\n") != std::string::npos);

    r = run({"simulate", "--scenarios", dir / "s.json", "--out", dir / "sim", "--days", "1", "--scenario", "p/r/c"});
    REQUIRE(r.code == cli::kExitOk);
    std::smatch m;
    REQUIRE(std::regex_search(r.out, m, std::regex("expected daily cost: ([0-9.]+)")));
    const std::string expected = m[1];
    REQUIRE(std::regex_search(r.out, m, std::regex("realized mean daily cost: ([0-9.]+)")));
    CHECK(m[1] == expected);

    CHECK(run({"simulate", "--scenarios", dir / "s.json", "--out", dir / "sim", "--scenario", "nope"}).code ==
          cli::kExitUsage);
    CHECK(run({"simulate", "--scenarios", dir / "s.json", "--out", dir / "sim", "--days", "0"}).code ==
          cli::kExitUsage);
}

TEST_CASE("malformed and missing inputs") {
    TempDir dir("malformed");
    std::string bad = kSingleton;
    bad.replace(bad.find("\"probability\""), 13, "\"probabilty\"");
    write_file(dir / "bad.json", bad);
    auto r = run({"solve", "--scenarios", dir / "bad.json", "--out", dir / "out"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("price.scenarios[0].probabilty") != std::string::npos);

    write_file(dir / "syntax.json", "{\n  \"schema\": \n}");
    r = run({"solve", "--scenarios", dir / "syntax.json", "--out", dir / "out"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("syntax.json:3:") != std::string::npos);

    r = run({"solve", "--scenarios", dir / "nothing.json", "--out", dir / "out"});
    CHECK(r.code == cli::kExitIo);

    write_file(dir / "cfg.json", R"({"schema": "greenbs.config/1", "storage": {"capacity": 5}})");
    r = run({"solve", "--config", dir / "cfg.json", "--out", dir / "out"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("storage.capacity") != std::string::npos);

    // output path blocked by a regular file
    write_file(dir / "blocker", "x");
    write_file(dir / "s.json", kSingleton);
    r = run({"solve", "--scenarios", dir / "s.json", "--out", dir / "blocker/sub"});
    CHECK(r.code == cli::kExitIo);
}

TEST_CASE("infeasible endpoints exit with the infeasible code") {
    TempDir dir("infeasible");
    write_file(dir / "s.json", kSingleton);
    write_file(dir / "cfg.json",
               R"({"schema": "greenbs.config/1", "scenarios": "s.json", "storage": {"capacity_wh": 300, "initial_wh": 500}})");
    const auto r = run({"solve", "--config", dir / "cfg.json", "--out", dir / "out"});
    CHECK(r.code == cli::kExitInfeasible);
    CHECK(r.err.find("initial") != std::string::npos);
}

TEST_CASE("study configuration end to end") {
    TempDir dir("study");
    auto r = run({"solve", "--config", kStudyConfig, "--out", dir / "a"});
    REQUIRE(r.code == cli::kExitOk);
    const std::string first = slurp(dir.path() / "a/policy.csv");
    CHECK(count_lines(first) == 1 + 24 * 20);
    CHECK(r.out.find("expected monthly cost: $") != std::string::npos);

    r = run({"solve", "--config", kStudyConfig, "--out", dir / "b"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(slurp(dir.path() / "b/policy.csv") == first);
    CHECK(slurp(dir.path() / "b/manifest.txt") == slurp(dir.path() / "a/manifest.txt"));

    r = run({"solve", "--config", kStudyConfig, "--out", dir / "c", "--seed", "7"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(slurp(dir.path() / "c/manifest.txt") != slurp(dir.path() / "a/manifest.txt"));

    r = run({"simulate", "--config", kStudyConfig, "--out", dir / "sim", "--days", "1000"});
    REQUIRE(r.code == cli::kExitOk);
    std::smatch m;
    REQUIRE(std::regex_search(r.out, m, std::regex("expected daily cost: ([0-9.]+)")));
    const double expected = std::stod(m[1]);
    REQUIRE(std::regex_search(r.out, m, std::regex("realized mean daily cost: ([0-9.]+) cents \\(SE ([0-9.]+)\\)")));
    const double mean = std::stod(m[1]);
    const double se = std::stod(m[2]);
    CHECK(se > 0.0);
    CHECK(std::abs(mean - expected) <= 3.0 * se);
    const auto sim = parse_csv(slurp(dir.path() / "sim/simulation.csv"));
    CHECK(header_line(sim) == std::string(kSimulationHeader));
    CHECK(sim.rows.size() == 1000);

    const std::string sim_bytes = slurp(dir.path() / "sim/simulation.csv");
    REQUIRE(run({"simulate", "--config", kStudyConfig, "--out", dir / "sim2", "--days", "1000"}).code == 0);
    CHECK(slurp(dir.path() / "sim2/simulation.csv") == sim_bytes);
}

TEST_CASE("battery sweep command") {
    TempDir dir("battery");
    auto r = run({"sweep", "battery", "--config", kStudyConfig, "--grid", "500:4000:500",
                  "--scales", "1,1.5", "--out", dir / "a"});
    REQUIRE(r.code == cli::kExitOk);
    const auto csv = parse_csv(slurp(dir.path() / "a/sweep_battery.csv"));
    CHECK(header_line(csv) == std::string(kBatteryHeader));
    REQUIRE(csv.rows.size() == 16);
    for (std::size_t i = 1; i < 8; ++i) CHECK(std::stod(csv.rows[i][2]) <= std::stod(csv.rows[i - 1][2]));
    CHECK(run({"sweep", "battery", "--config", kStudyConfig, "--grid", ",", "--out", dir / "b"}).code ==
          cli::kExitUsage);
}
