#include "wavescreen/cli.hpp"

int main(int argc, char** argv) { return wavescreen::run_cli(argc, argv); }
