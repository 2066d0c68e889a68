#include <iostream>

#include "incidence/cli.hpp"

int main(int argc, char** argv) { return incidence::run_cli(argc, argv, std::cout, std::cerr); }
