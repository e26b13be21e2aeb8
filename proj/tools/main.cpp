#include <iostream>
#include <string>
#include <vector>

#include "eoa/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return eoa::cli::run(args, std::cout, std::cerr);
}
