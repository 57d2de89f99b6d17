#include <iostream>

#include "nkcp3/commands.hpp"

int main(int argc, char** argv) { return nkcp3::cli::run(argc, argv, std::cout, std::cerr); }
