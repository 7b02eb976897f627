#include "godunf/cli.hpp"

#include <iostream>

int main (int argc, char **argv)
{
    return godunf::run_cli (argc, argv, std::cout, std::cerr);
}
