#include <iostream>

#include "robustest_cli/app.hpp"

int main(int argc, char** argv) { return robustest::cli::run(argc, argv, std::cout, std::cerr); }
