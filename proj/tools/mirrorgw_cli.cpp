#include <iostream>

#include "mirrorgw/cli.hpp"

int main(int argc, char** argv) { return mirrorgw::run_cli(argc, argv, std::cout, std::cerr); }
