#include <iostream>

#include "nctherm/cli/dispatch.hpp"

int main(int argc, char** argv) { return nctherm::cli::dispatch(argc, argv, std::cout, std::cerr); }
