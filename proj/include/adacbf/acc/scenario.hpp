#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adacbf/acc/acc.hpp"

namespace adacbf {

struct UnknownScenario : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ScenarioConfig {
    std::string name;
    AccMode mode = AccMode::adacbf;
    bool freeze_p2 = false;
    AccParams params;
    // Noise amplitude = noise_scale * (2 m/s on x', 0.45 m/s^2 on v').
    double noise_scale = 0.0;
    double noise_hold = NoiseModel::kDefaultHold;
    std::uint64_t seed = 0;
    InfeasiblePolicy policy = InfeasiblePolicy::hold_last_control;
    int substeps = 10;
};

struct ScenarioOverrides {
    std::optional<AccMode> mode{};
    std::optional<double> cd{};
    std::optional<std::pair<double, double>> cd_ramp{};
    std::optional<double> ramp_duration{};
    std::optional<double> noise_scale{};
    std::optional<double> noise_hold{};
    std::optional<std::uint64_t> seed{};
    std::optional<double> p1_0{};
    std::optional<double> p1_star{};
    std::optional<double> p2_star{};
    std::optional<double> T{};
    std::optional<double> dt{};
    std::optional<InfeasiblePolicy> policy{};
    std::optional<double> W1{};
    std::optional<double> P1{};
    std::optional<double> Q{};
    std::optional<double> p_acc{};
    std::optional<double> c_a{};
    std::optional<bool> freeze_p2{};
    std::optional<int> substeps{};
};

const std::vector<std::string>& scenario_names();
std::string scenario_description(const std::string& name);
ScenarioConfig scenario(const std::string& name, const ScenarioOverrides& overrides = {});
void apply_overrides(ScenarioConfig& cfg, const ScenarioOverrides& o);

Vector noise_amplitude(const ScenarioConfig& cfg);

struct ScenarioRun {
    AccProblem problem;
    Trajectory trajectory;
    TrajectorySummary summary;
};

SimOptions sim_options(const ScenarioConfig& cfg);
ScenarioRun run_scenario(const ScenarioConfig& cfg);

}  // namespace adacbf
