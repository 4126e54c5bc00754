#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ontoforge::cli {

enum ExitCode : int {
  kSuccess = 0,
  kRuntimeError = 1,
  kUsageError = 2,
  kEmptyResult = 3,
};

// Entry point shared by the binary and the tests; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ontoforge::cli
