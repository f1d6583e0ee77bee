#include <iostream>

#include "lawpca/cli.hpp"

int main(int argc, char** argv) { return lawpca::run_cli(argc, argv, std::cout, std::cerr); }
