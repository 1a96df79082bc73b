#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return qcli::run(argc, argv, std::cout, std::cerr); }
