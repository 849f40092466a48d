#pragma once

#include <string>
#include <vector>

namespace dimer {

// Runs the command line tool; returns the process exit code.
// 0 = success, 1 = domain error (machine-readable error object on stdout),
// 2 = usage error.
int run_cli(const std::vector<std::string>& args);

}  // namespace dimer
