#include <iostream>
#include <string>
#include <vector>

#include "hoil/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hoil::run(args, std::cout, std::cerr);
}
