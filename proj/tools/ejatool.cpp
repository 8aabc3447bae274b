#include <iostream>

#include "eja/cli.hpp"

int main(int argc, char** argv) { return eja::run_cli(argc, argv, std::cout, std::cerr); }
