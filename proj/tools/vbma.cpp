#include "mav/cli.h"

int main(int argc, char** argv) { return mav::cli_main(argc, argv); }
