// cli.hpp - the `kolmo` command line.
//
// Subcommands: exact, simulate, estimate, joint, qlogic-demo, table.
// Exit codes: 0 success, 1 validation or usage error, 2 internal error.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kolmo {

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kolmo
