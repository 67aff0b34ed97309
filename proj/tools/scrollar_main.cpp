#include <iostream>

#include "scrollar/commands.hpp"

int main(int argc, char** argv) { return scrollar::run_cli(argc, argv, std::cout, std::cerr); }
