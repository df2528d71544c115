#pragma once

// Command-line front end. `ringfwm <subcommand> [flags]`; see `--help`.

#include <ostream>
#include <string>
#include <vector>

namespace ringfwm {

enum ExitCode : int {
  kExitOk = 0,            // no errors and every verdict passed
  kExitVerdictFailed = 1, // ran to completion, at least one verdict failed
  kExitUsage = 2,         // bad command line or inconsistent configuration
  kExitInvalidData = 3,   // input file rejected (parse/validation/domain)
  kExitFitFailed = 4,     // a fit could not produce a usable result
  kExitIo = 5,            // file could not be read or written
};

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `--out` when given, otherwise to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ringfwm
