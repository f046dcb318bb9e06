#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lowenergy {

constexpr int kExperimentSchemaVersion = 1;

/// Runs the command line `args` (without the program name). Exit codes:
/// 0 success, 1 hard-check failure or user error, 2 degenerate input or
/// unknown suite, 3 internal assertion failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lowenergy
