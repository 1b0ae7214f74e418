#include "qperiod/cli.hpp"

int main(int argc, char** argv) { return qperiod::run_cli(argc, argv); }
