#include "qchain/workbench.hpp"

#include <unistd.h>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    bool color = isatty(fileno(stdout));
    return qchain::run_cli(std::move(args), std::cout, std::cerr, color);
}
