#include "gaplab/commands.hpp"

int main(int argc, char** argv) { return gaplab::run_cli(argc, argv); }
