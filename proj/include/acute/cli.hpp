#pragma once

#include <iosfwd>

namespace acute {

enum ExitCode : int { kExitOk = 0, kExitContract = 1, kExitVerification = 2 };

// Parses argv, runs one subcommand, writes the report to out and diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace acute
