#include <iostream>
#include <string>
#include <vector>

#include "nl2bt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nl2bt::cli::run_cli(args, std::cin, std::cout, std::cerr);
}
