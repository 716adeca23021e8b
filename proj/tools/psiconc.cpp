#include <iostream>

#include "psiconc/cli/commands.hpp"

int main(int argc, char** argv) { return psiconc::cli::run_cli(argc, argv, std::cout, std::cerr); }
