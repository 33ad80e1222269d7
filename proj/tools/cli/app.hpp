#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace avcs::cli {

/// Parses `args` (without the program name) and runs the selected
/// subcommand. Returns the process exit code: 0 ok/continue, 10 reject,
/// 2 usage or input error, 1 internal error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace avcs::cli
