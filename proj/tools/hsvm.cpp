#include <iostream>

#include "hsvm/cli.hpp"

int main(int argc, char** argv) { return hsvm::run_cli(argc, argv, std::cout, std::cerr); }
