#include <iostream>

#include "hybrid/service/cli.hpp"

int main(int argc, char** argv) { return hybrid::service::run_cli(argc, argv, std::cout, std::cerr); }
