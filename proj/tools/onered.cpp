#include "onered/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return onered::run_cli(argc, argv, std::cout, std::cerr); }
