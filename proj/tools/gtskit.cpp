#include <iostream>

#include "gtskit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gtskit::cli::run_cli(args, std::cout, std::cerr);
}
