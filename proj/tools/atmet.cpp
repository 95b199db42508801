#include <iostream>
#include <string>
#include <vector>

#include "atmet/frontend/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return atmet::frontend::run_cli(args, std::cout, std::cerr);
}
