#include <iostream>
#include <string>
#include <vector>

#include "pcband/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pcband::run_cli(std::move(args), std::cout, std::cerr);
}
