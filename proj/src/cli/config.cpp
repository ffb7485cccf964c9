#include "adacbf/cli/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "adacbf/numerics/errors.hpp"

namespace adacbf::cli {

using nlohmann::json;

namespace {

double number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
    return v.get<double>();
}

std::uint64_t unsigned_int(const json& v, const std::string& key) {
    if (!v.is_number_unsigned()) {
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
        throw ConfigError("'" + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::string text(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
    return v.get<std::string>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [k, v] : obj.items()) {
        if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "'" + where);
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& s) {
    std::uint64_t v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last || s.empty()) throw ConfigError("bad seed '" + s + "'");
    return v;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("bad number '" + s + "'");
    }
    if (pos != s.size()) throw ConfigError("bad number '" + s + "'");
    return v;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& input) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(input);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_u64(item));
            continue;
        }
        const auto lo = parse_u64(trim(item.substr(0, dots)));
        const auto hi = parse_u64(trim(item.substr(dots + 2)));
        if (hi < lo) throw ConfigError("empty seed range '" + item + "'");
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
    }
    if (out.empty()) throw ConfigError("empty seed list");
    return out;
}

std::pair<double, double> parse_cd_ramp(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("--cd-ramp expects START:END");
    return {parse_double(trim(s.substr(0, colon))), parse_double(trim(s.substr(colon + 1)))};
}

std::vector<double> parse_value_list(const std::string& input) {
    std::vector<double> out;
    std::stringstream ss(input);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(item));
    }
    if (out.empty()) throw ConfigError("empty value list");
    return out;
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be an object");
    static const std::set<std::string> keys = {
        "scenario", "mode", "cd", "cd_ramp", "noise_scale", "noise_hold", "seed", "seeds",
        "p1_0", "p1_star", "p2_star", "T", "dt", "infeasible_policy", "substeps", "freeze_p2",
        "weights", "c_a", "out"};
    reject_unknown(doc, keys, "");

    RunConfig rc;
    auto& o = rc.overrides;
    try {
        if (doc.contains("scenario")) rc.scenario = text(doc["scenario"], "scenario");
        if (doc.contains("mode")) o.mode = parse_acc_mode(text(doc["mode"], "mode"));
        if (doc.contains("infeasible_policy"))
            o.policy = parse_infeasible_policy(text(doc["infeasible_policy"], "infeasible_policy"));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (doc.contains("cd") && doc.contains("cd_ramp")) throw ConfigError("give either 'cd' or 'cd_ramp'");
    if (doc.contains("cd")) o.cd = number(doc["cd"], "cd");
    if (doc.contains("cd_ramp")) {
        const auto& r = doc["cd_ramp"];
        if (r.is_string()) {
            o.cd_ramp = parse_cd_ramp(r.get<std::string>());
        } else if (r.is_object()) {
            reject_unknown(r, {"start", "end", "duration"}, " in 'cd_ramp'");
            if (!r.contains("start") || !r.contains("end")) throw ConfigError("'cd_ramp' needs start and end");
            o.cd_ramp = std::pair{number(r["start"], "cd_ramp.start"), number(r["end"], "cd_ramp.end")};
            if (r.contains("duration")) o.ramp_duration = number(r["duration"], "cd_ramp.duration");
        } else {
            throw ConfigError("'cd_ramp' must be \"START:END\" or an object");
        }
    }
    if (doc.contains("noise_scale")) o.noise_scale = number(doc["noise_scale"], "noise_scale");
    if (doc.contains("noise_hold")) o.noise_hold = number(doc["noise_hold"], "noise_hold");
    if (doc.contains("seed") && doc.contains("seeds")) throw ConfigError("give either 'seed' or 'seeds'");
    if (doc.contains("seed")) o.seed = unsigned_int(doc["seed"], "seed");
    if (doc.contains("seeds")) {
        const auto& s = doc["seeds"];
        if (s.is_string()) {
            rc.seeds = parse_seed_list(s.get<std::string>());
        } else if (s.is_array()) {
            for (const auto& e : s) rc.seeds.push_back(unsigned_int(e, "seeds[]"));
            if (rc.seeds.empty()) throw ConfigError("empty seed list");
        } else {
            throw ConfigError("'seeds' must be a list or a range string");
        }
    }
    if (doc.contains("p1_0")) o.p1_0 = number(doc["p1_0"], "p1_0");
    if (doc.contains("p1_star")) o.p1_star = number(doc["p1_star"], "p1_star");
    if (doc.contains("p2_star")) o.p2_star = number(doc["p2_star"], "p2_star");
    if (doc.contains("T")) o.T = number(doc["T"], "T");
    if (doc.contains("dt")) o.dt = number(doc["dt"], "dt");
    if (doc.contains("c_a")) o.c_a = number(doc["c_a"], "c_a");
    if (doc.contains("substeps")) {
        const auto v = unsigned_int(doc["substeps"], "substeps");
        if (v < 1 || v > 100000) throw ConfigError("'substeps' out of range");
        o.substeps = static_cast<int>(v);
    }
    if (doc.contains("freeze_p2")) {
        if (!doc["freeze_p2"].is_boolean()) throw ConfigError("'freeze_p2' must be a boolean");
        o.freeze_p2 = doc["freeze_p2"].get<bool>();
    }
    if (doc.contains("weights")) {
        const auto& w = doc["weights"];
        if (!w.is_object()) throw ConfigError("'weights' must be an object");
        reject_unknown(w, {"W1", "P1", "Q", "p_acc"}, " in 'weights'");
        if (w.contains("W1")) o.W1 = number(w["W1"], "weights.W1");
        if (w.contains("P1")) o.P1 = number(w["P1"], "weights.P1");
        if (w.contains("Q")) o.Q = number(w["Q"], "weights.Q");
        if (w.contains("p_acc")) o.p_acc = number(w["p_acc"], "weights.p_acc");
    }
    if (doc.contains("out")) rc.out_dir = text(doc["out"], "out");
    return rc;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    json doc;
    try {
        doc = json::parse(in, nullptr, true, false);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed config '" + path + "': " + e.what());
    }
    return parse_config(doc);
}

json echo_config(const ScenarioConfig& c) {
    const auto& p = c.params;
    json j;
    j["scenario"] = c.name;
    j["mode"] = to_string(c.mode);
    if (p.cd.kind == CdSchedule::Kind::constant) {
        j["cd"] = p.cd.value;
    } else {
        j["cd_ramp"] = {{"start", p.cd.start}, {"end", p.cd.end}, {"duration", p.cd.ramp_duration}};
    }
    j["noise_scale"] = c.noise_scale;
    j["noise_hold"] = c.noise_hold;
    j["seed"] = c.seed;
    j["p1_0"] = p.p1_0;
    j["p1_star"] = p.p1_star;
    j["p2_star"] = p.p2_star;
    j["T"] = p.T;
    j["dt"] = p.dt;
    j["infeasible_policy"] = to_string(c.policy);
    j["substeps"] = c.substeps;
    j["freeze_p2"] = c.freeze_p2;
    j["c_a"] = p.c_a;
    j["weights"] = {{"W1", p.W1}, {"P1", p.P1}, {"Q", p.Q}, {"p_acc", p.p_acc}};
    return j;
}

ScenarioConfig resolve(const RunConfig& rc, std::optional<std::uint64_t> seed) {
    ScenarioOverrides o = rc.overrides;
    if (seed) o.seed = seed;
    try {
        return scenario(rc.scenario, o);
    } catch (const UnknownScenario&) {
        throw;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::vector<ScenarioConfig> resolve_all(const RunConfig& rc) {
    std::vector<ScenarioConfig> out;
    if (rc.seeds.empty()) {
        out.push_back(resolve(rc, std::nullopt));
    } else {
        for (auto s : rc.seeds) out.push_back(resolve(rc, s));
    }
    return out;
}

std::string default_out_dir() {
    if (const char* env = std::getenv("ADACBF_OUT_DIR"); env && *env) return env;
    return "out";
}

}  // namespace adacbf::cli
