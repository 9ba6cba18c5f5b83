#include <iostream>

#include "kcl/cli/commands.hpp"

int main(int argc, char** argv) { return kcl::cli::run(argc, argv, std::cout, std::cerr); }
