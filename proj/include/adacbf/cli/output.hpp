#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "adacbf/acc/scenario.hpp"

namespace adacbf::cli {

// Column order of every trace file.
inline constexpr const char* kTraceHeader =
    "t,x,v,x_p,b,psi1,u,nu1,p1,p2,delta_acc,delta1,cd,feasible,solver_status,solve_ms";

std::string format_double(double v);  // %.17g
std::string format_shortest(double v);  // shortest round-trip form
std::string trace_csv(const AccProblem& problem, const Trajectory& traj);
nlohmann::json summary_json(const ScenarioConfig& cfg, const TrajectorySummary& s);

// <scenario>_<mode>_seed<N>
std::string run_stem(const ScenarioConfig& cfg);

// Writes to a sibling temp file, then renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace adacbf::cli
