#include <iostream>

#include "cutlattice/cli/commands.hpp"

int main(int argc, char** argv) {
  return cutlattice::cli::run_cli(argc, argv, std::cout, std::cerr);
}
