#include <iostream>

#include "hubent/cli.hpp"

int main(int argc, char** argv) { return hubent::cli::main_entry(argc, argv, std::cout, std::cerr); }
