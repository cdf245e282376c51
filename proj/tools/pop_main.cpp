#include "pop/cli.hpp"

int main(int argc, char** argv) { return pop::run_cli(argc, argv); }
