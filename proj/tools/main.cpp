#include <iostream>

#include "txnet/cli.hpp"

int main(int argc, char** argv) { return txnet::cli::run(argc, argv, std::cout, std::cerr); }
