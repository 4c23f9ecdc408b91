#include <iostream>

#include "cli_core.hpp"

int main(int argc, char** argv) {
  return eismeas::cli::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
