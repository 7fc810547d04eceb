#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coex {

/// Runs the `coexist` command line. `args[0]` is the program name.
/// Exit codes: 0 coexistent / success, 1 not coexistent, 2 borderline or
/// inconclusive, 3 invalid arguments or non-effect input, 4 structural
/// failure (not in the algebra, not a projection), 5 unreadable input,
/// 6 output I/O failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coex
