#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adacbf/acc/scenario.hpp"

namespace adacbf::cli {

// Everything a run needs: scenario name plus overrides, seed list, output dir.
// Filled from a config document, then flags on top.
struct RunConfig {
    std::string scenario = "cd-040";
    ScenarioOverrides overrides;
    std::vector<std::uint64_t> seeds;  // empty: the scenario's own seed
    std::optional<std::string> out_dir;
};

// Rejects unknown keys and wrong types with ConfigError.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path);

// "0..19", "3", "1,4,7" or a mix such as "0..3,9".
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
// "START:END"
std::pair<double, double> parse_cd_ramp(const std::string& text);
std::vector<double> parse_value_list(const std::string& text);

// Fully resolved config for one seed; re-parses to the same ScenarioConfig.
nlohmann::json echo_config(const ScenarioConfig& cfg);
ScenarioConfig resolve(const RunConfig& rc, std::optional<std::uint64_t> seed);
std::vector<ScenarioConfig> resolve_all(const RunConfig& rc);

std::string default_out_dir();

}  // namespace adacbf::cli
