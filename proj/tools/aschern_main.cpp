#include <iostream>

#include "aschern/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aschern::run_cli(args, std::cout, std::cerr);
}
