#include <iostream>

#include "cvlqr/cli.hpp"

int main(int argc, char** argv) {
  return cvlqr::cli::run(argc, argv, std::cout, std::cerr);
}
