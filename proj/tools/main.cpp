#include "horncrit/cli.hpp"

int main(int argc, char** argv) { return horncrit::run_cli(argc, argv); }
