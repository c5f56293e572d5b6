#include <iostream>

#include "bmu/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bmu::run_cli(args, std::cout, std::cerr);
}
