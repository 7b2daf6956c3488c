#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nk1 {

/// Runs the command line (without the program name). Exit codes: 0 success
/// or accept, 1 reject or domain error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nk1
