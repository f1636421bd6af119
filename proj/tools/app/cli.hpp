#pragma once

#include <iosfwd>

namespace lcint::app {

// Parses argv, runs the subcommand and returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lcint::app
