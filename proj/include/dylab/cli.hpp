// include/dylab/cli.hpp - command dispatch, separated from main() so tests
// can drive the tool in-process and capture its streams.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dylab {

// Runs one command (argv without the program name).  Returns the process
// exit code: 0 success, 1 domain/user error, 2 malformed input or usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace dylab
