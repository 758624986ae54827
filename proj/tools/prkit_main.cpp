#include <iostream>

#include "prkit/cli.hpp"

int main(int argc, char** argv) { return prkit::run_cli({argv + 1, argv + argc}, std::cout, std::cerr); }
