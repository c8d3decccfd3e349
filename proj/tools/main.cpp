#include <iostream>
#include <string>
#include <vector>

#include "wavebound/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wavebound::cli::run(std::move(args), std::cout, std::cerr);
}
