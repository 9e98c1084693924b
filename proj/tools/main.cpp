#include <iostream>

#include "abssep/cli.hpp"

int main(int argc, char** argv) { return abssep::run_cli(argc, argv, std::cout, std::cerr); }
