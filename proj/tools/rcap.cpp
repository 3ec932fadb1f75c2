#include <iostream>
#include <string>
#include <vector>

#include "rcap/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return rcap::run_cli(args, std::cout, std::cerr);
}
