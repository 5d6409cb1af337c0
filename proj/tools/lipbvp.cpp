#include <iostream>

#include "lipbvp/cli.hpp"

int main(int argc, char** argv) { return lipbvp::run_cli(argc, argv, std::cout, std::cerr); }
