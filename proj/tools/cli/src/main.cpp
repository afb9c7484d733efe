#include <iostream>

#include "fblfas_tools/cli.hpp"

int main(int argc, char** argv) { return fblfas::cli::run(argc, argv, std::cout, std::cerr); }
