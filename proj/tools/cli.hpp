#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfock::cli {

/// Runs one CLI invocation (args excludes the program name).
/// Exit codes: 0 all checks pass, 1 relation failure, 2 usage/input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qfock::cli
