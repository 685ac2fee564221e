#include <iostream>
#include <string>
#include <vector>

#include "antichain/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return antichain::cli::run(args, std::cout, std::cerr);
}
