#include <iostream>
#include <string>
#include <vector>

#include "posscheck/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return posscheck::cli::run(args, std::cout, std::cerr);
}
