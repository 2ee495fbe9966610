#include "bfgp/cli.hpp"

int main(int argc, char **argv) { return bfgp::cli_main(argc, argv); }
