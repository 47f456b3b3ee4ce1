#include "qconnect/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return qconnect::run_cli(argc, argv, std::cout, std::cerr);
}
