#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kkscatter::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs the tool with args (args[0] is the program name). Results that are
/// not written to --out go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace kkscatter::cli
