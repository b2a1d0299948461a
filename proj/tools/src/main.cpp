#include <iostream>

#include "signalcast/cli/app.hpp"

int main(int argc, char** argv) { return signalcast::cli::run(argc, argv, std::cout, std::cerr); }
