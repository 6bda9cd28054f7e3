#include <iostream>

#include "crlab/cli.hpp"

int main(int argc, char** argv) { return crlab::run_cli(argc, argv, std::cout, std::cerr); }
