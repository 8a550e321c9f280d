#include "seifertvol/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto result = seifertvol::cli::run_args(args, std::getenv("SEIFERTVOL_TOL"));
    std::cout << result.out;
    std::cerr << result.err;
    return result.status;
}
