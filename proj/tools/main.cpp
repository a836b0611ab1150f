#include "demi/cli.hpp"

int main(int argc, char** argv) { return demi::cli::run(argc, argv); }
