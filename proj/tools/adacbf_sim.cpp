#include <iostream>

#include "adacbf/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return adacbf::cli::run_cli(args, std::cout, std::cerr);
}
