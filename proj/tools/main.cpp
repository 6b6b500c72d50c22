#include <iostream>

#include "hdr/cli.hpp"

int main(int argc, char** argv) { return hdr::run_cli(argc, argv, std::cout, std::cerr); }
