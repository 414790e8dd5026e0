#include <iostream>
#include <string>
#include <vector>

#include "plumbroot/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return plumbroot::run(args, std::cout, std::cerr);
}
