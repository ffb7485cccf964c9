#include "adacbf/acc/scenario.hpp"

#include <map>

#include "adacbf/numerics/errors.hpp"

namespace adacbf {

namespace {

struct Entry {
    std::string description;
    ScenarioConfig config;
};

const std::map<std::string, Entry>& library() {
    static const std::map<std::string, Entry> lib = [] {
        std::map<std::string, Entry> m;
        auto add = [&](const std::string& name, const std::string& desc, auto tweak) {
            ScenarioConfig c;
            c.name = name;
            tweak(c);
            m.emplace(name, Entry{desc, c});
        };
        add("cd-040", "constant c_d = 0.4", [](ScenarioConfig& c) { c.params.cd = CdSchedule::constant(0.4); });
        add("cd-023", "constant c_d = 0.23", [](ScenarioConfig& c) { c.params.cd = CdSchedule::constant(0.23); });
        add("cd-ramp-037-020", "c_d ramps 0.37 -> 0.2 once the safety row activates",
            [](ScenarioConfig& c) { c.params.cd = CdSchedule::ramp(0.37, 0.2); });
        add("p1star-002-cd-0155", "p1* = 0.02 with constant c_d = 0.155", [](ScenarioConfig& c) {
            c.params.cd = CdSchedule::constant(0.155);
            c.params.p1_star = 0.02;
        });
        add("p2-frozen", "p1 adaptive, p2 frozen at p2*, constant c_d = 0.23", [](ScenarioConfig& c) {
            c.params.cd = CdSchedule::constant(0.23);
            c.freeze_p2 = true;
        });
        for (int k = 0; k <= 2; ++k) {
            add("noise-" + std::to_string(k) + "x",
                "uniform noise scaled " + std::to_string(k) + "x from (2 m/s, 0.45 m/s^2), c_d = 0.23",
                [k](ScenarioConfig& c) {
                    c.params.cd = CdSchedule::constant(0.23);
                    c.noise_scale = k;
                });
        }
        return m;
    }();
    return lib;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : library()) n.push_back(k);
        return n;
    }();
    return names;
}

std::string scenario_description(const std::string& name) {
    const auto it = library().find(name);
    if (it == library().end()) throw UnknownScenario("unknown scenario '" + name + "'");
    return it->second.description;
}

void apply_overrides(ScenarioConfig& c, const ScenarioOverrides& o) {
    if (o.mode) c.mode = *o.mode;
    if (o.cd) c.params.cd = CdSchedule::constant(*o.cd);
    if (o.cd_ramp) c.params.cd = CdSchedule::ramp(o.cd_ramp->first, o.cd_ramp->second, c.params.cd.ramp_duration);
    if (o.ramp_duration) c.params.cd.ramp_duration = *o.ramp_duration;
    if (o.noise_scale) c.noise_scale = *o.noise_scale;
    if (o.noise_hold) c.noise_hold = *o.noise_hold;
    if (o.seed) c.seed = *o.seed;
    if (o.p1_0) c.params.p1_0 = *o.p1_0;
    if (o.p1_star) c.params.p1_star = *o.p1_star;
    if (o.p2_star) c.params.p2_star = *o.p2_star;
    if (o.T) c.params.T = *o.T;
    if (o.dt) c.params.dt = *o.dt;
    if (o.policy) c.policy = *o.policy;
    if (o.W1) c.params.W1 = *o.W1;
    if (o.P1) c.params.P1 = *o.P1;
    if (o.Q) c.params.Q = *o.Q;
    if (o.p_acc) c.params.p_acc = *o.p_acc;
    if (o.c_a) c.params.c_a = *o.c_a;
    if (o.freeze_p2) c.freeze_p2 = *o.freeze_p2;
    if (o.substeps) c.substeps = *o.substeps;
    if (!(c.noise_scale >= 0.0)) throw ConfigError("noise_scale must be >= 0");
    if (c.substeps < 1) throw ConfigError("substeps must be >= 1");
    c.params.validate();
}

ScenarioConfig scenario(const std::string& name, const ScenarioOverrides& overrides) {
    const auto it = library().find(name);
    if (it == library().end()) throw UnknownScenario("unknown scenario '" + name + "'");
    ScenarioConfig c = it->second.config;
    apply_overrides(c, overrides);
    return c;
}

Vector noise_amplitude(const ScenarioConfig& cfg) {
    return Vector{2.0 * cfg.noise_scale, 0.45 * cfg.noise_scale, 0.0};
}

SimOptions sim_options(const ScenarioConfig& cfg) {
    SimOptions o;
    o.T = cfg.params.T;
    o.dt = cfg.params.dt;
    o.substeps = cfg.substeps;
    o.policy = cfg.policy;
    o.noise = NoiseModel(noise_amplitude(cfg), cfg.seed, cfg.noise_hold);
    return o;
}

ScenarioRun run_scenario(const ScenarioConfig& cfg) {
    AccProblem p = build_acc_problem(cfg.params, cfg.mode, cfg.freeze_p2);
    Trajectory t = run(p.problem, sim_options(cfg));
    TrajectorySummary s = summarize(t);
    return {std::move(p), std::move(t), s};
}

}  // namespace adacbf
