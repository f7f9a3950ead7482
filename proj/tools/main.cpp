#include <iostream>

#include "p1orbit/cli.hpp"

int main(int argc, char** argv) {
    return p1orbit::cli::run(argc, argv, std::cout, std::cerr);
}
