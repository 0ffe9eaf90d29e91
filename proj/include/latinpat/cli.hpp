#pragma once

#include <iosfwd>

namespace latinpat {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitCertFail = 1,
  kExitInputError = 2,
  kExitGenerationFailure = 3,
  kExitResourceBound = 4,
};

// Entry point of the latinpat tool; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latinpat
