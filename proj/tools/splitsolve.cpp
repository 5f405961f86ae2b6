#include "splitsolve/io/cli.hpp"

int main(int argc, char** argv) { return splitsolve::cli::cli_main(argc, argv); }
