#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return cone_spectra::cli::run(argc, argv, std::cout, std::cerr); }
