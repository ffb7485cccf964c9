#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "adacbf/acc/scenario.hpp"

namespace adacbf::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kHalted = 2 };

// Runs independent scenarios across worker threads; results keep input order.
std::vector<ScenarioRun> run_many(const std::vector<ScenarioConfig>& configs, unsigned max_threads = 0);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adacbf::cli
