#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dissoc::cli {

// Run one CLI invocation. `args` excludes the program name.
// Exit codes: 0 success, 1 usage or input-text error, 2 violated operation
// precondition, 3 internal invariant breach.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace dissoc::cli
