#include <iostream>

#include "schwarzlift/cli.hpp"

int main(int argc, char** argv) { return schwarzlift::run_cli(argc, argv, std::cout, std::cerr); }
