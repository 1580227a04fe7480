#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mapvir {

/// Runs `mapvir <args...>` (args excludes the program name). Returns the exit
/// status: 0 success, 1 validation error, 2 computational error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mapvir
