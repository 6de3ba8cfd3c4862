#include <iostream>
#include <string>
#include <vector>

#include "haarconv/cli.hpp"

int main(int argc, char** argv) {
  return haarconv::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
