#pragma once

#include <iosfwd>

namespace coevo {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitFailure = 1;

/// Entry point behind the `coevo` tool: subcommands run, sweep and validate.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace coevo
