#include "ffh/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ffh::run_cli(argc, argv, std::cout, std::cerr); }
