#include <iostream>

#include "polydual/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return polydual::runCli(args, std::cout, std::cerr);
}
