#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace negseq::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kOverflow = 3,
};

/// Runs the command line `args` (without the program name). Results go to
/// `out`, diagnostics and stats to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace negseq::cli
