#include "benford_kit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    return benford_kit::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
