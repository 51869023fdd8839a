#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selfnorm::cli {

/// Runs the selfnorm command line on the given arguments (program name
/// excluded). CSV goes to `out`, human-readable reports and errors to `err`.
/// Exit codes: 0 success, 1 experiment failure (a coverage check was
/// violated), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace selfnorm::cli
