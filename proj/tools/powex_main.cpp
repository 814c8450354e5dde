#include <iostream>
#include <string>
#include <vector>

#include "powex/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv + 1, argv + argc);
  return powex::cli::parse_and_dispatch(args, std::cout, std::cerr);
}
