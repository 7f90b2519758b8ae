#include "locdens/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return locdens::run_cli(argc, argv, std::cout, std::cerr); }
