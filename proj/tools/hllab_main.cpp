#include <iostream>

#include "hllab/cli.hpp"

int main(int argc, char** argv) { return hllab::cli::run(argc, argv, std::cout, std::cerr); }
