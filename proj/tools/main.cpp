#include <iostream>

#include "rbda/cli.hpp"

int main(int argc, char** argv) { return rbda::run_cli(argc, argv, std::cout, std::cerr); }
