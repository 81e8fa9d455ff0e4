#include <iostream>

#include "hyperderiv/cli.hpp"

int main(int argc, char** argv) { return hyperderiv::cli::run(argc, argv, std::cout, std::cerr); }
