#pragma once

#include <string>
#include <vector>

namespace lvk::cli {

/// Process exit status plus what goes to stdout and stderr.
struct RunResult {
  int status = 0;
  std::string out;
  std::string err;
};

/// Runs one invocation; `args` excludes the program name. Status 0 on
/// success, 1 for domain errors, 2 for malformed input.
RunResult run(const std::vector<std::string>& args);

}  // namespace lvk::cli
