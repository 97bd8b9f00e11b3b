#include "combitag/cli.hpp"

int main(int argc, char** argv) { return combitag::cli_main(argc, argv); }
