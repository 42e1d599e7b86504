#include <iostream>

#include "coevo/cli.hpp"

int main(int argc, char** argv) { return coevo::run_cli(argc, argv, std::cout, std::cerr); }
