#include <iostream>
#include <string>
#include <vector>

#include "specdet/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return specdet::run_cli(args, std::cout, std::cerr);
}
