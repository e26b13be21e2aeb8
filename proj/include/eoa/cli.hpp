// Command-line front end. `eoa <subcommand> [options]`:
//
//   bounds           closed-form bounds for a QDM state
//   optimize         numerical max/min of the average ensemble entanglement
//   tilde            magic-basis conjugate of a two-qubit state (QDM out)
//   verify-appendix  rebuild and check the twelve-member two-copy ensemble
//   casebook         every worked reference value, one row each
//
// Exit codes: 0 ok, 1 validation, 2 I/O or parse, 3 verification failure.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace eoa::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kIoOrParse = 2,
  kVerification = 3,
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eoa::cli
