#include <iostream>

#include "fpcount/cli.hpp"

int main(int argc, char** argv) { return fpcount::run_cli(argc, argv, std::cout, std::cerr); }
