#include <iostream>

#include "halfline/cli.hpp"

int main(int argc, char** argv) {
  return halfline::cli::main_entry(argc, argv, std::cout, std::cerr);
}
