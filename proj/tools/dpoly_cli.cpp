#include <string>
#include <vector>

#include "dpoly/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return dpoly::cli_main(args);
}
