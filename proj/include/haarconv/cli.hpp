#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace haarconv::cli {

/// Exit codes of the haarconv tool.
enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kIo = 3 };

/// Default seed when neither --seed nor HAARCONV_SEED is given.
inline constexpr unsigned long long kDefaultSeed = 7;

/// Runs the tool on argv-style arguments (args[0] is the program name).
/// Reports go to --out or to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace haarconv::cli
