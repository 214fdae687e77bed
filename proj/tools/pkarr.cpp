#include <iostream>

#include "pkarr/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    pkarr::CommandResult result = pkarr::run_command(args);
    std::cout << result.out;
    std::cerr << result.err;
    return result.code;
}
