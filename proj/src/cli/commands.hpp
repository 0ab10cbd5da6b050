#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace greenbs::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitInfeasible = 3,
    kExitIo = 4,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a,b,c" or an inclusive range "start:stop:step".
std::vector<double> parse_grid(const std::string& spec);

} // namespace greenbs::cli
