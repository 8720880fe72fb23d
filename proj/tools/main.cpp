#include <iostream>

#include "uavcharge/cli.hpp"

int main(int argc, char** argv) {
  return uavcharge::cli::run_cli(argc, argv, std::cout, std::cerr);
}
