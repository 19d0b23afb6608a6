#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cantor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitBadInput = 2;

/// Runs one subcommand. The report goes to `out`, diagnostics to `err`.
/// Exit 0: no violations; 1: invariant violations; 2: malformed input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with args excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cantor::cli
