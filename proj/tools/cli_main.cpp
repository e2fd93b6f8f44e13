#include "synchro/cli.hpp"

int main(int argc, char** argv) { return synchro::run_cli(argc, argv); }
