#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tpsharp::cli {

// Exit codes: 0 holds, 1 fails, 2 uncertain, 3 input error.
enum ExitCode : int { kHolds = 0, kFails = 1, kUncertain = 2, kInputError = 3 };

// args[0] is the program name. Human-readable output and --json output go
// to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tpsharp::cli
