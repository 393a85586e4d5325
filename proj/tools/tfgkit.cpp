#include <iostream>

#include "tfgkit/cli.hpp"

int main(int argc, char** argv) { return tfgkit::run_cli(argc, argv, std::cout, std::cerr); }
