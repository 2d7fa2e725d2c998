#include <iostream>

#include "ctd/cli.hpp"

int main(int argc, char** argv) { return ctd::cli::run(argc, argv, std::cout, std::cerr); }
