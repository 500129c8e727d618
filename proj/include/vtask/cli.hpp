#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace vtask {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitInternal = 3 };

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`; diagnostics go to `err`, the first line of a failure being
/// `error:<kind>: <message>`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream* in = nullptr);

}  // namespace vtask
