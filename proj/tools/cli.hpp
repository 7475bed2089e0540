#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace reducto::cli {

/// Runs the command line `args` (program name first). Exit codes: 10
/// satisfiable, 20 unsatisfiable, 0 unknown or success, 1 usage or input
/// errors, 2 selfcheck contradictions.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace reducto::cli
