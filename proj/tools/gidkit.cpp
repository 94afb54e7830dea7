#include "gidkit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gidkit::run_cli(argc, argv, std::cout, std::cerr); }
