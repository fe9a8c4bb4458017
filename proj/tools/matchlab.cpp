#include "matchlab/cli.hpp"

int main(int argc, char** argv) { return matchlab::run_cli(argc, argv); }
