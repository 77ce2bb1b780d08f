#include <iostream>

#include "char2q/cli.hpp"

int main(int argc, char **argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return char2q::cli::run(args, std::cout, std::cerr);
}
