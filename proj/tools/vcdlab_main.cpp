#include <vcdlab/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return vcdlab::cli::main(argc, argv, std::cout, std::cerr); }
