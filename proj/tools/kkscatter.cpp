#include <iostream>
#include <string>
#include <vector>

#include "kkscatter/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return kkscatter::cli::run(args, std::cout, std::cerr);
}
