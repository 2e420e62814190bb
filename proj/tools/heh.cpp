#include <iostream>

#include "heh/cli/cli.hpp"

int main(int argc, char** argv) { return heh::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
