#include "mmw/cli.hpp"

int main(int argc, char** argv) { return mmw::cli_main(argc, argv); }
