#include "bbtspec/cli.hpp"

int main(int argc, char** argv) { return bbt::run_cli(argc, argv); }
