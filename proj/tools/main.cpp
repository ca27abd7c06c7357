#include <iostream>

#include "numerositas/cli.hpp"

int main(int argc, char** argv) {
  return numerositas::run_cli(argc, argv, std::cout, std::cerr);
}
