#include <iostream>

#include "mhdchar/cli.hpp"

int main(int argc, char** argv) { return mhdchar::run_cli(argc, argv, std::cout, std::cerr); }
