#pragma once

#include <string>
#include <vector>

namespace alloclab {

// Exit codes: 0 all checks passed, 1 some check failed, 2 usage error,
// 3 invalid parameter or malformed config, 4 enumeration cap exceeded.
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBadConfig = 3;
inline constexpr int kExitCapExceeded = 4;

// Runs one subcommand; args exclude the program name. Writes report.csv and
// report.json into the output directory (--out, else $ALLOCLAB_OUT, else ".").
int run_cli(std::vector<std::string> args);

}  // namespace alloclab
