#include <iostream>

#include "qtrig/cli.hpp"

int main(int argc, char** argv) { return qtrig::cli::run(argc, argv, std::cout, std::cerr); }
