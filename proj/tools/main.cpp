#include "clothrl/harness/cli.hpp"

int main(int argc, char** argv) { return clothrl::harness::run_cli(argc, argv); }
