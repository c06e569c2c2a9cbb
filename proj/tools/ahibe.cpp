#include <iostream>

#include "ahibe/cli/app.hpp"

int main(int argc, char** argv) { return ahibe::cli::run(argc, argv, std::cout, std::cerr); }
