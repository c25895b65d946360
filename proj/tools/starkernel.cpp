// starkernel command-line entry point; see README for the subcommands.

#include "starkernel/cli/commands.hpp"

#include <iostream>

int main(int argc, char **argv) {
    return starkernel::cli::run_cli(argc, argv, std::cout, std::cerr);
}
