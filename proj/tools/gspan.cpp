#include <iostream>
#include <string>
#include <vector>

#include "gspan/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gspan::cli::run(args, std::cout, std::cerr);
}
