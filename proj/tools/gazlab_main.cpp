#include "gazlab/cli.hpp"

int main(int argc, char** argv) { return gazlab::run_cli(argc, argv); }
