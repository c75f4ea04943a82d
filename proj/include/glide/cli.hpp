#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace glide {

/// Exit codes: 0 success, 1 solver or infeasibility failure, 2 usage or
/// validation error. Documents go to `out` when no --out is given;
/// diagnostics always go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace glide
