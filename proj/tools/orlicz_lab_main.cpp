#include <iostream>

#include "orlicz/cli.hpp"

int main(int argc, char** argv) {
    return orlicz::run_cli(argc, argv, std::cout, std::cerr);
}
