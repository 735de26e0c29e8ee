#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace noisy_ea::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBudget = 2;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Machine output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noisy_ea::cli
