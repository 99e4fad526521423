#include <iostream>

#include "ncsh/cli/cli.hpp"

int main(int argc, char** argv) { return ncsh::cli::main_entry(argc, argv, std::cout, std::cerr); }
