#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace axai {

/// Exit codes of the command-line front end.
enum exit_code : int {
  exit_ok = 0,
  exit_failure = 1,  // usage errors, verify mismatches
  exit_schema = 2,
  exit_arity = 3,
  exit_cap = 4,
  exit_no_fast_path = 5,
  exit_no_constructor = 6,
};

/// Runs one invocation: args[0] is the program name, args[1] the subcommand
/// (eval, query, reduce, bench, verify). Results go to out as JSON (CSV for
/// bench); diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace axai
