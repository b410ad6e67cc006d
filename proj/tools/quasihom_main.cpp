#include "quasihom/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return quasihom::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
