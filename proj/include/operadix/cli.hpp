#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace operadix {

/// Runs the operadix command line. `args` excludes the program name.
/// Returns 0 on success, 1 when a verification finds a violation and 2 on
/// usage or parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Golden directory: $OPERADIX_FIXTURES if set, else the build-time default.
std::string fixtures_dir();

}  // namespace operadix
