#include <iostream>

#include "geoecc/cli.hpp"

int main(int argc, char** argv) {
  return geoecc::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
