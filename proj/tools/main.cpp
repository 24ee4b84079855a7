#include <iostream>

#include "nanotrap/cli.hpp"

int main(int argc, char** argv) { return nanotrap::cli::main_entry(argc, argv, std::cout, std::cerr); }
