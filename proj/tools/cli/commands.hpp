#pragma once

#include <iosfwd>

namespace dyft::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kEnvelopeError = 3,
};

/// Parses and runs one `dyft` invocation, writing human-readable output to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace dyft::cli
