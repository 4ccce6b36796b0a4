#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tglasso::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIo = 3,
  kExitSolver = 4,
};

/// Runs the tool on args (args[0] is the program name) and returns the exit
/// code. Progress goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a lambda grid:
///   "a,b,c"           explicit values
///   "hi:lo:count"     geometric from hi down to lo
///   "auto:count[:r]"  geometric from the largest off-diagonal |S_ij| of the
///                     data down to r times that (r defaults to 0.01)
/// Values are returned in strictly descending order.
std::vector<double> parse_lambda_grid(const std::string& text, double auto_max);

std::vector<double> parse_list(const std::string& text);

}  // namespace tglasso::cli
