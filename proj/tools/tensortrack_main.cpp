#include <iostream>
#include <string>
#include <vector>

#include "tensortrack/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tensortrack::dispatch(args, std::cout, std::cerr);
}
