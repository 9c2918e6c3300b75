#include <iostream>

#include "memristor/cli.hpp"

int main(int argc, char** argv) { return memristor::run_cli(argc, argv, std::cout, std::cerr); }
