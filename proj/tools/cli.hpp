#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace proxcalc::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kAdditivityUnverified = 2,
  kMaxIterExceeded = 3,
  kNotMonotone = 4,
};

/// Entry point shared by the executable and the tests. args[0] is the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace proxcalc::cli
