// qfiunruh: command-line driver

#include <iostream>

#include "qfiunruh/cli.hpp"

int main(int argc, char** argv) {
    return qfiunruh::cli::run(argc, argv, std::cout, std::cerr);
}
