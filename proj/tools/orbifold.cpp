#include <iostream>

#include "orbifold/cli.hpp"

int main(int argc, char** argv) { return orbifold::cli::run(argc, argv, std::cout, std::cerr); }
