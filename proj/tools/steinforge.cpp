#include <iostream>

#include "steinforge/cli.hpp"

int main(int argc, char** argv) {
  return steinforge::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
