#include <iostream>

#include "wrb/cli.hpp"

int main(int argc, char** argv) { return wrb::cli_run(argc, argv, std::cout, std::cerr); }
