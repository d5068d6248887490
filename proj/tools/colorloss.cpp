#include <iostream>

#include "colorloss/cli.h"

int main(int argc, char** argv) { return colorloss::run_cli(argc, argv, std::cout, std::cerr); }
