#include <string>
#include <vector>

#include "bigjump/experiments.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bigjump::cli_main(args);
}
