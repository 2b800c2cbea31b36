#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace timedata::cli {

enum ExitCode : int { ok = 0, domain_failure = 1, usage_failure = 2 };

/// Runs `timedata-lab` with `args` (program name excluded). Results go to
/// `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands a comma list such as "0,8,16,...,96"; "..." continues the step
/// of the two preceding values up to the value after it.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace timedata::cli
