#pragma once

#include <string>
#include <vector>

namespace relaynet {

enum ExitCode { kExitOk = 0, kExitConfig = 1, kExitInfeasible = 2, kExitNumerical = 3 };

// Parses arguments (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args);

}  // namespace relaynet
