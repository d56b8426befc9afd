#include <iostream>
#include <string>
#include <vector>

#include "spectral_gibbs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spectral_gibbs::run_cli(args, std::cout, std::cerr);
}
