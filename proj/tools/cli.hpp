#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lanchester::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kRuntime = 2,
    kVerificationFailed = 3,
};

/// Runs one command line (without the program name). Data goes to `out`
/// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses LO:HI:N into N values spaced evenly over [LO, HI], both ends included.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace lanchester::cli
