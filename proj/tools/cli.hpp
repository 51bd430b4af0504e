#pragma once

#include <iosfwd>

namespace cic {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Entry point of the `cic` tool with injectable streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cic
