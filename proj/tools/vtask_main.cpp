#include <iostream>
#include <string>
#include <vector>

#include "vtask/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vtask::run_cli(args, std::cout, std::cerr);
}
