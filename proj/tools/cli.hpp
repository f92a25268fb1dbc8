#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace firefront::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;

/// Runs the tool with `args` (program name excluded).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace firefront::cli
