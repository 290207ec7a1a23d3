#include <iostream>
#include <string>
#include <vector>

#include "gbd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gbd::run(args, std::cout, std::cerr);
}
