#include <iostream>

#include "nomaee/cli.hpp"

int main(int argc, char** argv) { return nomaee::run_cli(argc, argv, std::cout, std::cerr); }
