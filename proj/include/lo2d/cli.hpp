#pragma once

#include <string>
#include <vector>

namespace lo2d::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kUsage = 2,
  kDivergence = 3,
};

// Entry point of the `lo2d` tool. `args` excludes the program name.
int run(const std::vector<std::string> &args);
int run(int argc, const char *const *argv);

} // namespace lo2d::cli
