#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ahibe::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kStructural = 4,
  kAuthentication = 5,
  kDepth = 6,
  kNotPrefix = 7,
};

/// Runs one command line. Diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ahibe::cli
