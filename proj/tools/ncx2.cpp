#include <iostream>

#include "ncx2/cli.hpp"

int main(int argc, char** argv) {
    return ncx2::cli::run(argc, argv, std::cout, std::cerr);
}
