#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fderange {

inline constexpr const char* kCliVersion = "1.0.0";

// Runs the command-line tool on `args` (program name excluded), writing
// reports to `out` and diagnostics to `err`. Exit codes: 0 success,
// 1 invariant or verification failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fderange
