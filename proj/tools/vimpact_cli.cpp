#include "vimpact/cli_io.hpp"

int main(int argc, char** argv) { return vimpact::run_command(argc, argv); }
