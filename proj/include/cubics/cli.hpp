#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cubics::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerification = 2, kBudget = 3 };

// Runs one invocation (args excludes the program name). Reports go to out
// unless --out is given; diagnostics are one line on err:
//   error: <usage|verification|budget|internal>: <message>
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubics::cli
