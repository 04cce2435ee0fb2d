#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace steinforge::cli {

/// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kPropertyFailed = 1;
inline constexpr int kUsage = 2;

/// Run the command line `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace steinforge::cli
