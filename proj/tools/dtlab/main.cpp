#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return dtlab::run(argc, argv, std::cout, std::cerr); }
