#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace boat::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace boat::cli
