#include <iostream>

#include "hzn/cli.hpp"

int main(int argc, char** argv) { return hzn::cli::run(argc, argv, std::cout, std::cerr); }
