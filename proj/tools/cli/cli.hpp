#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psq::cli {

enum ExitCode : int {
  kOk = 0,
  kZeroCount = 1,       // count found no representation
  kInvalidInput = 2,
  kCertificationFailed = 3,
  kMissingData = 4,
  kInternal = 5,        // checkpoint trouble or an unexpected error
};

/// Runs the command line given without the program name. Output goes to
/// `out`, diagnostics to `err`; the return value is the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psq::cli
