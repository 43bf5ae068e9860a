#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace strobo::cli {

/// Executes one subcommand and returns the process exit code. Library
/// errors are reported on `err` as "error[category]: message".
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (flags override any --config file) and calls run().
int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace strobo::cli
