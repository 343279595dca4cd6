#include <iostream>

#include "potluck/cli.hpp"

int main(int argc, char** argv) { return potluck::cli_main(argc, argv, std::cout, std::cerr); }
