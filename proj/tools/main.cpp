#include <iostream>

#include "ewens_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ewens::cli::run(args, std::cout, std::cerr);
}
