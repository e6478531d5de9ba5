#include <iostream>
#include <string>
#include <vector>

#include "tgreg_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tgreg::cli::run_cli(args, std::cout, std::cerr);
}
