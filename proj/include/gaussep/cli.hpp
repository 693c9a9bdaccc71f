#pragma once

#include <iosfwd>

namespace gaussep {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitSeparable = 0,
  kExitEntangled = 1,
  kExitUnphysical = 2,
  kExitInputError = 3,
};

/// Entry point of the `gaussep` tool. Reads "-" (or a missing path) from `in`.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace gaussep
