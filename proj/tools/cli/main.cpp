#include <iostream>

#include "cli/app.hpp"

int main(int argc, char** argv) {
  return stiefel_sr::cli::run(argc, argv, std::cout, std::cerr);
}
