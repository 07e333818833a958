#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rrcolor::cli {

// Runs the command line given args (program name excluded). Exit codes:
// 0 success, 1 usage or input errors, 2 step budget exceeded.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rrcolor::cli
