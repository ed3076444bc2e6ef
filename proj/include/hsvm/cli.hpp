#pragma once

#include <iosfwd>

namespace hsvm {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitNumerical = 3,
};

/// Entry point for the `hsvm` tool: gen, train, predict, eval, benchmark.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hsvm
