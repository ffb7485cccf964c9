#include "adacbf/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "adacbf/cli/config.hpp"
#include "adacbf/cli/output.hpp"
#include "adacbf/numerics/errors.hpp"

namespace adacbf::cli {

namespace fs = std::filesystem;

std::vector<ScenarioRun> run_many(const std::vector<ScenarioConfig>& configs, unsigned max_threads) {
    const std::size_t n = configs.size();
    std::vector<std::optional<ScenarioRun>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    unsigned workers = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                slots[i] = run_scenario(configs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < workers; ++k) pool.emplace_back(work);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<ScenarioRun> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

namespace {

// Flag values captured during parsing; applied on top of any --config file.
struct Flags {
    std::optional<std::string> config_path;
    std::optional<std::string> scenario;
    std::optional<std::string> out_dir;
    std::vector<std::uint64_t> seeds;
    ScenarioOverrides o;
};

template <class T, class Fn>
CLI::Option* opt(CLI::App* app, const std::string& name, Fn fn, const std::string& desc) {
    return app->add_option_function<T>(name, fn, desc);
}

void add_common(CLI::App* app, Flags& f) {
    opt<std::string>(app, "--config", [&](const std::string& s) { f.config_path = s; }, "JSON config file");
    opt<std::string>(app, "--scenario", [&](const std::string& s) { f.scenario = s; }, "named scenario");
    opt<std::string>(app, "--mode", [&](const std::string& s) { f.o.mode = parse_acc_mode(s); },
                     "adacbf | hocbf-baseline");
    opt<double>(app, "--cd", [&](double v) { f.o.cd = v; f.o.cd_ramp.reset(); }, "constant braking coefficient");
    opt<std::string>(app, "--cd-ramp", [&](const std::string& s) { f.o.cd_ramp = parse_cd_ramp(s); f.o.cd.reset(); },
                     "START:END ramp after activation");
    opt<double>(app, "--ramp-duration", [&](double v) { f.o.ramp_duration = v; }, "ramp length [s]");
    opt<double>(app, "--noise-scale", [&](double v) { f.o.noise_scale = v; }, "multiple of (2 m/s, 0.45 m/s^2)");
    opt<double>(app, "--noise-hold", [&](double v) { f.o.noise_hold = v; }, "noise sample-and-hold interval [s]");
    opt<std::uint64_t>(app, "--seed", [&](std::uint64_t v) { f.o.seed = v; f.seeds.clear(); }, "RNG seed");
    opt<std::string>(app, "--seeds", [&](const std::string& s) { f.seeds = parse_seed_list(s); f.o.seed.reset(); },
                     "seed list, e.g. 0..19 or 1,5,9");
    opt<double>(app, "--p1-0", [&](double v) { f.o.p1_0 = v; }, "initial p1");
    opt<double>(app, "--p1-star", [&](double v) { f.o.p1_star = v; }, "p1 target");
    opt<double>(app, "--p2-star", [&](double v) { f.o.p2_star = v; }, "p2 target");
    opt<double>(app, "--T", [&](double v) { f.o.T = v; }, "horizon [s]");
    opt<double>(app, "--dt", [&](double v) { f.o.dt = v; }, "control period [s]");
    opt<int>(app, "--substeps", [&](int v) { f.o.substeps = v; }, "RK4 substeps per control period");
    opt<std::string>(app, "--infeasible-policy",
                     [&](const std::string& s) { f.o.policy = parse_infeasible_policy(s); },
                     "halt | hold-last-control | clamp-to-bounds");
    app->add_flag_function("--freeze-p2", [&](std::int64_t) { f.o.freeze_p2 = true; }, "keep p2 at p2*");
    opt<std::string>(app, "--out", [&](const std::string& s) { f.out_dir = s; }, "output directory");
}

RunConfig build_config(const Flags& f) {
    RunConfig rc = f.config_path ? load_config_file(*f.config_path) : RunConfig{};
    if (f.scenario) rc.scenario = *f.scenario;
    auto& b = rc.overrides;
    const auto& t = f.o;
    auto take = [](auto& dst, const auto& src) {
        if (src) dst = src;
    };
    if (t.cd) {
        b.cd = t.cd;
        b.cd_ramp.reset();
    }
    if (t.cd_ramp) {
        b.cd_ramp = t.cd_ramp;
        b.cd.reset();
    }
    if (t.seed) {
        b.seed = t.seed;
        rc.seeds.clear();
    }
    if (!f.seeds.empty()) {
        rc.seeds = f.seeds;
        b.seed.reset();
    }
    take(b.mode, t.mode);
    take(b.ramp_duration, t.ramp_duration);
    take(b.noise_scale, t.noise_scale);
    take(b.noise_hold, t.noise_hold);
    take(b.p1_0, t.p1_0);
    take(b.p1_star, t.p1_star);
    take(b.p2_star, t.p2_star);
    take(b.T, t.T);
    take(b.dt, t.dt);
    take(b.policy, t.policy);
    take(b.freeze_p2, t.freeze_p2);
    take(b.substeps, t.substeps);
    if (f.out_dir) rc.out_dir = f.out_dir;
    return rc;
}

fs::path out_dir(const RunConfig& rc) { return rc.out_dir ? fs::path(*rc.out_dir) : fs::path(default_out_dir()); }

void write_run(const fs::path& dir, const std::string& stem, const ScenarioConfig& cfg, const ScenarioRun& r) {
    write_atomic(dir / (stem + ".csv"), trace_csv(r.problem, r.trajectory));
    write_atomic(dir / (stem + ".summary.json"), summary_json(cfg, r.summary).dump(2) + "\n");
}

std::string opt_text(const std::optional<double>& v) { return v ? format_double(*v) : std::string("none"); }

void report(std::ostream& out, const std::string& stem, const TrajectorySummary& s) {
    out << stem << ": steps=" << s.steps << " min_b=" << format_double(s.min_b)
        << " min_psi1=" << format_double(s.min_psi1) << " infeasible=" << s.infeasible_steps
        << " first_infeasible_t=" << opt_text(s.first_infeasible_t) << " mean_solve_ms=" << s.mean_solve_ms
        << (s.halted ? " HALTED" : "") << '\n';
}

int cmd_run(const Flags& f, bool echo, std::ostream& out) {
    const RunConfig rc = build_config(f);
    const auto configs = resolve_all(rc);
    if (echo) {
        for (const auto& c : configs) out << echo_config(c).dump(2) << '\n';
        return kOk;
    }
    const auto dir = out_dir(rc);
    const auto runs = run_many(configs);
    bool halted = false;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto stem = run_stem(configs[i]);
        write_run(dir, stem, configs[i], runs[i]);
        write_atomic(dir / (stem + ".config.json"), echo_config(configs[i]).dump(2) + "\n");
        report(out, stem, runs[i].summary);
        halted = halted || runs[i].summary.halted;
    }
    return halted ? kHalted : kOk;
}

const std::vector<std::string>& sweep_params() {
    static const std::vector<std::string> p = {"cd", "p1_star", "p2_star", "noise_scale", "seed"};
    return p;
}

int cmd_sweep(const Flags& f, const std::string& param, const std::string& values_text, std::ostream& out) {
    if (std::find(sweep_params().begin(), sweep_params().end(), param) == sweep_params().end())
        throw ConfigError("unknown sweep parameter '" + param + "'");
    RunConfig rc = build_config(f);
    std::vector<ScenarioConfig> configs;
    std::vector<std::string> labels;
    if (param == "seed") {
        rc.seeds = parse_seed_list(values_text);
        configs = resolve_all(rc);
        for (const auto& c : configs) labels.push_back(std::to_string(c.seed));
    } else {
        for (double v : parse_value_list(values_text)) {
            RunConfig one = rc;
            auto& o = one.overrides;
            if (param == "cd") {
                o.cd = v;
                o.cd_ramp.reset();
            } else if (param == "p1_star") {
                o.p1_star = v;
            } else if (param == "p2_star") {
                o.p2_star = v;
            } else {
                o.noise_scale = v;
            }
            // A multi-seed config sweeps its first seed only.
            if (!one.seeds.empty()) {
                o.seed = one.seeds.front();
                one.seeds.clear();
            }
            configs.push_back(resolve(one, std::nullopt));
            labels.push_back(format_shortest(v));
        }
    }
    const auto dir = out_dir(rc);
    const auto runs = run_many(configs);
    std::ostringstream table;
    table << "value,min_b,min_psi1,infeasible_steps,first_infeasible_t,mean_solve_ms,halted\n";
    const fs::path run_dir = dir / ("sweep_" + param);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& s = runs[i].summary;
        std::string stem = run_stem(configs[i]);
        if (param != "seed") stem += "_" + param + labels[i];
        write_run(run_dir, stem, configs[i], runs[i]);
        table << labels[i] << ',' << format_double(s.min_b) << ',' << format_double(s.min_psi1) << ','
              << s.infeasible_steps << ',' << (s.first_infeasible_t ? format_double(*s.first_infeasible_t) : "")
              << ',' << format_double(s.mean_solve_ms) << ',' << (s.halted ? 1 : 0) << '\n';
        report(out, stem, s);
    }
    const auto table_path = dir / ("sweep_" + rc.scenario + "_" + param + ".csv");
    write_atomic(table_path, table.str());
    out << "table: " << table_path.string() << '\n';
    return kOk;
}

int cmd_compare(const Flags& f, const std::string& modes_text, std::ostream& out) {
    RunConfig rc = build_config(f);
    if (rc.seeds.size() > 1) throw ConfigError("compare takes a single --seed");
    if (!rc.seeds.empty()) {
        rc.overrides.seed = rc.seeds.front();
        rc.seeds.clear();
    }
    std::vector<AccMode> modes;
    {
        std::stringstream ss(modes_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            try {
                modes.push_back(parse_acc_mode(item));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    }
    if (modes.size() < 2) throw ConfigError("compare needs at least two modes");

    std::vector<ScenarioConfig> configs;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        RunConfig one = rc;
        one.overrides.mode = modes[i];
        configs.push_back(resolve(one, std::nullopt));
        std::string label = to_string(modes[i]);
        const auto dup = std::count(modes.begin(), modes.begin() + static_cast<std::ptrdiff_t>(i), modes[i]);
        if (dup > 0) label += "_" + std::to_string(dup + 1);
        labels.push_back(label);
    }
    const auto runs = run_many(configs);

    const auto& ref = runs.front().trajectory.steps;
    for (std::size_t k = 1; k < runs.size(); ++k) {
        const auto& st = runs[k].trajectory.steps;
        bool same = st.size() == ref.size();
        for (std::size_t i = 0; same && i < st.size(); ++i) same = st[i].t == ref[i].t;
        if (!same)
            throw ConfigError("mismatched horizons: '" + labels[0] + "' has " + std::to_string(ref.size()) +
                              " steps, '" + labels[k] + "' has " + std::to_string(st.size()));
    }

    std::ostringstream csv;
    csv << "t";
    for (const auto& l : labels) csv << ",u_" << l << ",b_" << l << ",psi1_" << l << ",feasible_" << l;
    csv << '\n';
    for (std::size_t i = 0; i < ref.size(); ++i) {
        csv << format_double(ref[i].t);
        for (const auto& r : runs) {
            const auto& s = r.trajectory.steps[i];
            csv << ',' << format_double(s.w[r.problem.idx_u]) << ',' << format_double(s.psi.at(0)) << ','
                << format_double(s.psi.at(1)) << ',' << (s.feasible ? 1 : 0);
        }
        csv << '\n';
    }

    nlohmann::json summary;
    summary["scenario"] = rc.scenario;
    summary["modes"] = nlohmann::json::array();
    for (std::size_t k = 0; k < runs.size(); ++k)
        summary["modes"].push_back({{"label", labels[k]}, {"summary", summary_json(configs[k], runs[k].summary)}});
    summary["deltas"] = nlohmann::json::array();
    for (std::size_t k = 1; k < runs.size(); ++k) {
        double du = 0, db = 0, dpsi = 0;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            const auto& a = runs[0].trajectory.steps[i];
            const auto& b = runs[k].trajectory.steps[i];
            du = std::max(du, std::abs(a.w[runs[0].problem.idx_u] - b.w[runs[k].problem.idx_u]));
            db = std::max(db, std::abs(a.psi[0] - b.psi[0]));
            dpsi = std::max(dpsi, std::abs(a.psi[1] - b.psi[1]));
        }
        const auto& s0 = runs[0].summary;
        const auto& sk = runs[k].summary;
        summary["deltas"].push_back(
            {{"label", labels[k]},
             {"reference", labels[0]},
             {"max_abs_du", du},
             {"max_abs_db", db},
             {"max_abs_dpsi1", dpsi},
             {"d_min_b", sk.min_b - s0.min_b},
             {"d_min_psi1", sk.min_psi1 - s0.min_psi1},
             {"d_infeasible_steps", static_cast<std::int64_t>(sk.infeasible_steps) -
                                        static_cast<std::int64_t>(s0.infeasible_steps)}});
    }

    const auto dir = out_dir(rc);
    const std::string stem = "compare_" + rc.scenario;
    write_atomic(dir / (stem + ".csv"), csv.str());
    write_atomic(dir / (stem + ".json"), summary.dump(2) + "\n");
    for (std::size_t k = 0; k < runs.size(); ++k) report(out, labels[k], runs[k].summary);
    out << "wrote " << (dir / (stem + ".csv")).string() << '\n';
    return kOk;
}

int cmd_list(std::ostream& out) {
    for (const auto& n : scenario_names()) out << std::left << std::setw(22) << n << scenario_description(n) << '\n';
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"AdaCBF / HOCBF adaptive cruise control simulator", "adacbf_sim"};
    app.require_subcommand(1);

    Flags run_flags, sweep_flags, compare_flags;
    bool echo = false;
    std::string sweep_param, sweep_values, modes = "adacbf,hocbf-baseline";

    auto* run_cmd = app.add_subcommand("run", "simulate one scenario (one run per seed)");
    add_common(run_cmd, run_flags);
    run_cmd->add_flag("--echo-config", echo, "print the resolved config and exit");

    auto* sweep_cmd = app.add_subcommand("sweep", "vary one parameter and tabulate summaries");
    add_common(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--param", sweep_param, "cd | p1_star | p2_star | noise_scale | seed")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma list (seed also takes ranges)")->required();

    auto* compare_cmd = app.add_subcommand("compare", "run several modes side by side");
    add_common(compare_cmd, compare_flags);
    compare_cmd->add_option("--modes", modes, "comma list of modes")->capture_default_str();

    auto* list_cmd = app.add_subcommand("list-scenarios", "print the scenario library");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    } catch (const std::exception& e) {
        // Option callbacks run during parsing.
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (*run_cmd) return cmd_run(run_flags, echo, out);
        if (*sweep_cmd) return cmd_sweep(sweep_flags, sweep_param, sweep_values, out);
        if (*compare_cmd) return cmd_compare(compare_flags, modes, out);
        if (*list_cmd) return cmd_list(out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace adacbf::cli
