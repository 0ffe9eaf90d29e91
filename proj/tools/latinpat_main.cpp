#include "latinpat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return latinpat::run_cli(argc, argv, std::cout, std::cerr); }
