#include <iostream>
#include <string>
#include <vector>

#include "polycm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return polycm::cli::run(args, std::cout, std::cerr);
}
