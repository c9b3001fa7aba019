#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gini::cli {

/// Runs the command-line surface on an argument list (without the program
/// name), writing results to `out` and diagnostics to `err`.
///
/// Exit codes: 0 success / all properties passed, 1 a property violation
/// was found, 2 usage or domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gini::cli
