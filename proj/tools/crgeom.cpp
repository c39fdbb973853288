#include <iostream>

#include "crgeom/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return crgeom::cli::run(args, std::cout, std::cerr);
}
