// cli.hpp — command dispatch for the polsim executable.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polsim::cli {

// Runs one subcommand (spectrum, coherent-fraction, hom, sweep-dip,
// phonon-info) with its flags. args excludes the program name. Returns 0 on
// success, 1 on a computation/configuration failure, 2 on bad flags.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace polsim::cli
