#include "adacbf/cli/output.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "adacbf/cli/config.hpp"
#include "adacbf/numerics/errors.hpp"
#include "adacbf/numerics/kernels.hpp"

namespace adacbf::cli {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_shortest(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string trace_csv(const AccProblem& p, const Trajectory& traj) {
    std::ostringstream os;
    os << kTraceHeader << '\n';
    for (const auto& r : traj.steps) {
        const double fields[] = {
            r.t, r.z[0], r.z[1], r.z[2], r.psi.at(0), r.psi.at(1), r.w[p.idx_u], p.nu1_of(r),
            p.p1_of(r), p.p2_of(r), r.w[p.idx_delta_acc], p.delta1_of(r), p.cd_of(r)};
        for (double f : fields) os << format_double(f) << ',';
        os << (r.feasible ? 1 : 0) << ',' << to_string(r.status) << ',' << format_double(r.solve_ms) << '\n';
    }
    return os.str();
}

namespace {
nlohmann::json opt(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}
}  // namespace

nlohmann::json summary_json(const ScenarioConfig& cfg, const TrajectorySummary& s) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["scenario"] = cfg.name;
    j["mode"] = to_string(cfg.mode);
    j["seed"] = cfg.seed;
    j["steps"] = s.steps;
    j["min_b"] = s.min_b;
    j["argmin_b_t"] = s.argmin_b_t;
    j["min_psi1"] = s.min_psi1;
    j["argmin_psi1_t"] = s.argmin_psi1_t;
    j["infeasible_steps"] = s.infeasible_steps;
    j["first_infeasible_t"] = opt(s.first_infeasible_t);
    j["activation_t"] = opt(s.activation_t);
    j["mean_solve_ms"] = s.mean_solve_ms;
    j["max_solve_ms"] = s.max_solve_ms;
    j["halted"] = s.halted;
    j["kernel_isa"] = kernels::isa_name(kernels::active_isa());
    j["config"] = echo_config(cfg);
    return j;
}

std::string run_stem(const ScenarioConfig& cfg) {
    return cfg.name + "_" + to_string(cfg.mode) + "_seed" + std::to_string(cfg.seed);
}

void write_atomic(const fs::path& path, const std::string& contents) {
    static std::atomic<unsigned> counter{0};
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ostringstream tag;
    tag << ".tmp." << std::this_thread::get_id() << '.' << counter++;
    fs::path tmp = path;
    tmp += tag.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
        out << contents;
        out.flush();
        if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw ConfigError("cannot rename into '" + path.string() + "': " + ec.message());
    }
}

}  // namespace adacbf::cli
