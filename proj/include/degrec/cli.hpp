#pragma once

#include <iosfwd>

namespace degrec::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kMalformedInput = 1,
  kClassificationRejected = 2,
  kFitFailed = 3,
};

/// Runs the command line `argv[0..argc)`; `in` feeds `fit` when no file
/// argument is given.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace degrec::cli
