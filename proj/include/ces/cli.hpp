#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ces {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a requested certification did not hold
inline constexpr int kExitUsage = 2;   // bad arguments, configuration or input files

/// Entry point of the ces-kit command line. `args` excludes the program name.
/// Reports go to `out` (or to --out PATH), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ces
