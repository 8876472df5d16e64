#include "degrec/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return degrec::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
