#include <iostream>

#include "runner.hpp"

int main(int argc, char** argv)
{
    return pdmsoliton::cli::main_entry(argc, argv, std::cout, std::cerr);
}
