#include "acute/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return acute::run(argc, argv, std::cout, std::cerr); }
