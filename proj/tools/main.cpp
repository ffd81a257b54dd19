#include <iostream>

#include "corraudit/cli.hpp"

int main(int argc, char** argv) { return corraudit::dispatch(argc, argv, std::cout, std::cerr); }
