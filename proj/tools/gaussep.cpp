#include <iostream>

#include "gaussep/cli.hpp"

int main(int argc, char** argv) {
  return gaussep::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
