#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hornlog::cli {

enum ExitCode : int {
    kOk = 0,
    kUnsatisfied = 1,
    kInputError = 2,
    kBudgetExhausted = 3,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hornlog::cli
