#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gbd {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerification = 1,
  kExitInput = 2,
  kExitResource = 3,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gbd
