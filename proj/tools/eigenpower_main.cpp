#include <iostream>

#include "eigenpower/app.hpp"

int main(int argc, char** argv) { return eigenpower::cli_main(argc, argv, std::cout, std::cerr); }
