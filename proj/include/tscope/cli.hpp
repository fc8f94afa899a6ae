#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tscope::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;

/// Runs one command; args exclude the program name. Results go to out as a
/// single JSON object (or a text table), diagnostics to err. Nothing is
/// written to out on an error path.
int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err);

} // namespace tscope::cli
