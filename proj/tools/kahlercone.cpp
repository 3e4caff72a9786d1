#include <iostream>
#include <string>
#include <vector>

#include "kahlercone/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return kc::cli::main_entry(args, std::cout, std::cerr);
}
