#pragma once

#include <iosfwd>

namespace potluck {

/// Exit codes of the command-line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point behind the `potluck` executable. Subcommands: run, compare,
/// oscillate. Errors are reported on `err` as a single line prefixed with
/// "potluck: error:".
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace potluck
