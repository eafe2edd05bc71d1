#include <iostream>

#include "idemsvd/cli.hpp"

int main(int argc, char** argv) { return idemsvd::cli::run(argc, argv, std::cout, std::cerr); }
