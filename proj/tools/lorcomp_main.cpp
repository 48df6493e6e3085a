#include <iostream>
#include <string>
#include <vector>

#include "lorcomp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return lorcomp::cli::run(args, std::cout, std::cerr);
}
