#pragma once

#include <iosfwd>
#include <string_view>

namespace ncx2::cli {

inline constexpr std::string_view kToolName = "ncx2";
inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int { kSuccess = 0, kUsage = 2, kNumerical = 3 };

// Runs one command line (argv[0] is the program name). Results go to `out`,
// diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ncx2::cli
