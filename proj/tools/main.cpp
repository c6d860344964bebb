// main.cpp — polsim executable entry point.

#include <iostream>
#include <string>
#include <vector>

#include "polsim/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return polsim::cli::run_command(args, std::cout, std::cerr);
}
