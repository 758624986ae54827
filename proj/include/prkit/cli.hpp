#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prkit {

/// Runs one command line (without the program name). Exit codes: 0 on
/// success, 2 for invalid input (schema errors, validation violations,
/// infeasible parameters, bad flags), 1 for internal errors and failed
/// verifications. JSON documents go to `out` unless a file is named.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "prkit <version>".
std::string tool_version();

}  // namespace prkit
