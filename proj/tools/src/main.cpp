#include <iostream>

#include "eoe/cli/cli.hpp"

int main(int argc, char** argv) { return eoe::cli::run_cli(argc, argv, std::cout, std::cerr); }
