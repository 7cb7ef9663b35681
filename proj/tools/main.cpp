#include <iostream>
#include <string>
#include <vector>

#include "fibnet/cli.hpp"

int main(int argc, char** argv) {
  return fibnet::cli::main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
