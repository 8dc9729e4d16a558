#include <iostream>

#include "mpg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return mpg::cli::run(args, std::cout, std::cerr);
}
