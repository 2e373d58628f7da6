#include <iostream>
#include <string>
#include <vector>

#include "riot/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return riot::cli::run(std::move(args), std::cout, std::cerr);
}
