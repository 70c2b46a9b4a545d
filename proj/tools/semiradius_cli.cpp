#include "semiradius/harness/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return semiradius::harness::cli_main(argc, argv, std::cout, std::cerr); }
