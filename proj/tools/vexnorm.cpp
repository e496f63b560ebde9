#include <iostream>
#include <string>
#include <vector>

#include "vexnorm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return vexnorm::run(args, std::cout, std::cerr);
}
