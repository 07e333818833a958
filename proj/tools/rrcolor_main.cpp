#include <iostream>
#include <string>
#include <vector>

#include "rrcolor/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rrcolor::cli::run(std::move(args), std::cout, std::cerr);
}
