#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pcband {

// Full command-line entry point, callable in-process for tests:
// `args` excludes the program name.  Normal output (reports written to
// stdout when no --out is given) goes to `out`, diagnostics to `err`.
// Returns the process exit code:
//   0  success
//   1  verification ran but exceeded its tolerance
//   2  configuration error (bad flags, unknown profile, invalid ranges)
//   3  numerical failure (quadrature, singularity, oracle preconditions)
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace pcband
