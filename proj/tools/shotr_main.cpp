#include "shotr/cli.hpp"

int main(int argc, char** argv) { return shotr::run_cli(argc, argv); }
