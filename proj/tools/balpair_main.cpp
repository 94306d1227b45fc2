#include "balpair/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return balpair::cli_main(argc, argv, std::cout, std::cerr); }
