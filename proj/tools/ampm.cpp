#include "ampm/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    ampm::cli::Environment env;
    env.color = std::getenv("AMPM_NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO) == 1;
    return ampm::cli::run(args, std::cout, std::cerr, env);
}
