#include <iostream>

#include "qhlat/cli.hpp"

int main(int argc, char** argv) { return qhlat::run_cli(argc, argv, std::cout, std::cerr); }
