#include <iostream>

#include "omega_sums/cli.hpp"

int main(int argc, char** argv) {
    return omega_sums::cli::run_cli(argc, argv, std::cout, std::cerr);
}
