#include <iostream>

#include "rangewalk_cli.hpp"

int main(int argc, char** argv)
{
    return rangewalk::cli::run_command(argc, argv, std::cout, std::cerr);
}
