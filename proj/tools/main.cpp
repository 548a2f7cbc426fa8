#include <iostream>

#include "dsp/cli.hpp"

int main(int argc, char** argv) { return dsp::run(argc, argv, std::cout, std::cerr); }
