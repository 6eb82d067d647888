#include "prolime/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return prolime::cli::run(argc, argv, std::cout, std::cerr);
}
