#include <iostream>

#include "hambvp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hambvp::run_cli(args, std::cout, std::cerr);
}
