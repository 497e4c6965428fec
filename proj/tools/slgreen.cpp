#include "slgreen/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return slgreen::cli::run(argc, argv, std::cout, std::cerr); }
