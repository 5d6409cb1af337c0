#pragma once

#include <iosfwd>

namespace lipbvp {

/// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or configuration error.
enum ExitCode { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// Entry point of the `lipbvp` tool; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lipbvp
