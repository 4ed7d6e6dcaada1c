#include <string>
#include <vector>

#include "bcast/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bcast::main_entry(args);
}
