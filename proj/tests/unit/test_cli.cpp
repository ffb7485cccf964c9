#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "adacbf/cli/commands.hpp"
#include "adacbf/cli/config.hpp"
#include "adacbf/cli/output.hpp"
#include "adacbf/numerics/errors.hpp"

using namespace adacbf;
using namespace adacbf::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("adacbf_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& s) const { return (path / s).string(); }
};

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Trace without the timing column, which is the only nondeterministic field.
std::string without_timing(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("seed lists") {
    CHECK(parse_seed_list("0..19").size() == 20);
    CHECK(parse_seed_list("1,5,9") == std::vector<std::uint64_t>{1, 5, 9});
    CHECK(parse_seed_list("0..2, 7") == std::vector<std::uint64_t>{0, 1, 2, 7});
    CHECK_THROWS_AS(parse_seed_list("3..1"), ConfigError);
    CHECK_THROWS_AS(parse_seed_list(""), ConfigError);
    CHECK_THROWS_AS(parse_seed_list("x"), ConfigError);
    CHECK(parse_cd_ramp("0.37:0.2") == std::pair{0.37, 0.2});
    CHECK_THROWS_AS(parse_cd_ramp("0.37"), ConfigError);
}

TEST_CASE("config documents reject unknown keys and bad types") {
    using nlohmann::json;
    CHECK_THROWS_AS(parse_config(json{{"scenario", "cd-040"}, {"cdd", 0.3}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"weights", {{"W2", 1.0}}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"cd", "high"}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"seed", -3}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"cd", 0.3}, {"cd_ramp", "0.3:0.2"}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"mode", "mpc"}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
    const auto rc = parse_config(json{{"scenario", "cd-023"},
                                      {"cd_ramp", {{"start", 0.35}, {"end", 0.25}, {"duration", 5.0}}},
                                      {"seeds", "0..3"},
                                      {"weights", {{"P1", 1e10}}}});
    CHECK(rc.scenario == "cd-023");
    CHECK(rc.seeds.size() == 4);
    CHECK(*rc.overrides.P1 == 1e10);
    CHECK(*rc.overrides.ramp_duration == 5.0);
}

TEST_CASE("echoed config re-parses to the same scenario") {
    ScenarioOverrides o;
    o.seed = 17;
    o.cd_ramp = std::pair{0.33, 0.21};
    o.P1 = 12345.678;
    o.noise_scale = 0.7;
    const auto cfg = scenario("noise-1x", o);
    const auto back = resolve(parse_config(echo_config(cfg)), std::nullopt);
    CHECK(echo_config(back) == echo_config(cfg));
}

TEST_CASE("run writes a 300-row trace and a summary") {
    TempDir d;
    const auto r = invoke({"run", "--scenario", "cd-040", "--out", d.path.string()});
    REQUIRE(r.code == 0);
    const std::string csv = slurp(d / "cd-040_adacbf_seed0.csv");
    CHECK(csv.substr(0, csv.find('\n')) == kTraceHeader);
    CHECK(count_lines(csv) == 301);
    const auto j = nlohmann::json::parse(slurp(d / "cd-040_adacbf_seed0.summary.json"));
    CHECK(j["min_b"].get<double>() > 0.0);
    CHECK(j["first_infeasible_t"].is_null());
    CHECK(j["steps"] == 300);
}

TEST_CASE("baseline ramp reports a first infeasible time") {
    TempDir d;
    const auto r = invoke({"run", "--scenario", "cd-ramp-037-020", "--mode", "hocbf-baseline", "--out", d.path.string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(d / "cd-ramp-037-020_hocbf-baseline_seed0.summary.json"));
    CHECK_FALSE(j["first_infeasible_t"].is_null());
}

TEST_CASE("exit codes") {
    TempDir d;
    CHECK(invoke({"run", "--scenario", "nope", "--out", d.path.string()}).code == 1);
    CHECK(invoke({"run", "--cd", "abc"}).code == 1);
    CHECK(invoke({"run", "--infeasible-policy", "retry"}).code == 1);
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"run", "--config", d / "missing.json"}).code == 1);
    std::ofstream(d / "bad.json") << "{ \"scenario\": ";
    CHECK(invoke({"run", "--config", d / "bad.json"}).code == 1);
    std::ofstream(d / "unknown.json") << R"({"scenario": "cd-040", "colour": "red"})";
    CHECK(invoke({"run", "--config", d / "unknown.json"}).code == 1);
    CHECK(invoke({"run", "--scenario", "cd-ramp-037-020", "--mode", "hocbf-baseline", "--infeasible-policy", "halt",
               "--out", d.path.string()})
              .code == 2);
    CHECK(invoke({"sweep", "--param", "cd", "--values", "", "--out", d.path.string()}).code == 1);
    CHECK(invoke({"sweep", "--param", "mass", "--values", "1", "--out", d.path.string()}).code == 1);
    CHECK(invoke({"compare", "--modes", "adacbf", "--out", d.path.string()}).code == 1);
}

TEST_CASE("flags override config values") {
    TempDir d;
    std::ofstream(d / "c.json") << R"({"scenario": "cd-023", "cd": 0.3, "T": 2.0})";
    const auto r = invoke({"run", "--config", d / "c.json", "--cd", "0.35", "--echo-config"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["cd"] == 0.35);
    CHECK(j["T"] == 2.0);
    CHECK(j["scenario"] == "cd-023");
}

TEST_CASE("echoed config reproduces the trace bit for bit") {
    TempDir d;
    REQUIRE(invoke({"run", "--scenario", "noise-1x", "--seed", "3", "--T", "4", "--out", d / "a"}).code == 0);
    const std::string stem = "noise-1x_adacbf_seed3";
    REQUIRE(invoke({"run", "--config", d / ("a/" + stem + ".config.json"), "--out", d / "b"}).code == 0);
    const auto a = slurp(d / ("a/" + stem + ".csv"));
    const auto b = slurp(d / ("b/" + stem + ".csv"));
    REQUIRE(count_lines(a) == 41);
    CHECK(without_timing(a) == without_timing(b));
    CHECK(slurp(d / ("a/" + stem + ".config.json")) == slurp(d / ("b/" + stem + ".config.json")));
}

TEST_CASE("multi-seed run writes one trace per seed") {
    TempDir d;
    REQUIRE(invoke({"run", "--scenario", "noise-1x", "--seeds", "0..3", "--T", "2", "--out", d.path.string()}).code == 0);
    for (int s = 0; s < 4; ++s) CHECK(fs::exists(d / ("noise-1x_adacbf_seed" + std::to_string(s) + ".csv")));
    // No temp files left behind.
    for (const auto& e : fs::directory_iterator(d.path)) CHECK(e.path().string().find(".tmp.") == std::string::npos);
}

TEST_CASE("sweep over one seed matches run") {
    TempDir d;
    REQUIRE(invoke({"run", "--scenario", "noise-1x", "--seed", "4", "--T", "3", "--out", d / "run"}).code == 0);
    REQUIRE(invoke({"sweep", "--scenario", "noise-1x", "--param", "seed", "--values", "4", "--T", "3", "--out",
                 d / "sweep"})
                .code == 0);
    const std::string stem = "noise-1x_adacbf_seed4";
    CHECK(without_timing(slurp(d / ("run/" + stem + ".csv"))) ==
          without_timing(slurp(d / ("sweep/sweep_seed/" + stem + ".csv"))));
    const auto table = slurp(d / "sweep/sweep_noise-1x_seed.csv");
    CHECK(count_lines(table) == 2);
    CHECK(table.rfind("value,min_b,min_psi1,infeasible_steps,first_infeasible_t", 0) == 0);
}

TEST_CASE("sweep over c_d tabulates one row per value") {
    TempDir d;
    REQUIRE(invoke({"sweep", "--scenario", "cd-040", "--param", "cd", "--values", "0.4,0.3,0.23", "--out",
                 d.path.string()})
                .code == 0);
    std::istringstream in(slurp(d / "sweep_cd-040_cd.csv"));
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream ls(line);
        std::string value, min_b, min_psi1, inf;
        std::getline(ls, value, ',');
        std::getline(ls, min_b, ',');
        std::getline(ls, min_psi1, ',');
        std::getline(ls, inf, ',');
        CHECK(std::stod(min_b) > 0.0);
        CHECK(inf == "0");
    }
    CHECK(rows == 3);
}

TEST_CASE("compare: same mode twice has zero deltas") {
    TempDir d;
    REQUIRE(invoke({"compare", "--scenario", "cd-040", "--modes", "adacbf,adacbf", "--T", "5", "--out", d.path.string()})
                .code == 0);
    const auto j = nlohmann::json::parse(slurp(d / "compare_cd-040.json"));
    const auto& delta = j["deltas"][0];
    CHECK(delta["max_abs_du"] == 0.0);
    CHECK(delta["max_abs_db"] == 0.0);
    CHECK(delta["max_abs_dpsi1"] == 0.0);
    const auto csv = slurp(d / "compare_cd-040.csv");
    CHECK(csv.rfind("t,u_adacbf,b_adacbf,psi1_adacbf,feasible_adacbf,u_adacbf_2", 0) == 0);
    CHECK(count_lines(csv) == 51);
}

TEST_CASE("compare on the ramp: baseline infeasible, AdaCBF not") {
    TempDir d;
    REQUIRE(invoke({"compare", "--scenario", "cd-ramp-037-020", "--out", d.path.string()}).code == 0);
    const auto j = nlohmann::json::parse(slurp(d / "compare_cd-ramp-037-020.json"));
    CHECK(j["modes"][0]["summary"]["infeasible_steps"] == 0);
    CHECK(j["modes"][1]["summary"]["infeasible_steps"].get<int>() > 0);
}

TEST_CASE("compare rejects mismatched horizons") {
    TempDir d;
    const auto r = invoke({"compare", "--scenario", "cd-ramp-037-020", "--infeasible-policy", "halt", "--out",
                        d.path.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("mismatched horizons") != std::string::npos);
}

TEST_CASE("output directory defaults to the environment variable") {
    TempDir d;
    ::setenv("ADACBF_OUT_DIR", d.path.c_str(), 1);
    const auto r = invoke({"run", "--scenario", "cd-040", "--T", "1"});
    ::unsetenv("ADACBF_OUT_DIR");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(d / "cd-040_adacbf_seed0.csv"));
}

TEST_CASE("list-scenarios prints the library") {
    const auto r = invoke({"list-scenarios"});
    CHECK(r.code == 0);
    for (const auto& n : scenario_names()) CHECK(r.out.find(n) != std::string::npos);
}

}  // TEST_SUITE
