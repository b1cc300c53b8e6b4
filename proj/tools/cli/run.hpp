#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace biotsplit::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_usage = 2,
    exit_runtime = 3,
};

/// Runs the study and the requested checks, writes the reports and returns
/// exit_ok iff every check passed. `log` receives a human-readable summary.
int run(const RunConfig& config, std::ostream& log);

/// argv-style entry point shared by the executable and the tests.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biotsplit::cli
