#include <iostream>
#include <vector>

#include "daseinizer/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return daseinizer::run_cli(args, std::cout, std::cerr);
}
