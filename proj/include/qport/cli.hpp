#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qport {

/// Exit statuses of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_false = 1, exit_input_error = 2 };

/// Runs the command-line tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qport
