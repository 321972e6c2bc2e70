#include "fieldstar/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fieldstar::cli::run(argc, argv, std::cout, std::cerr); }
