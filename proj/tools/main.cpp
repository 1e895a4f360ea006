#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return sfvem::cli::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
