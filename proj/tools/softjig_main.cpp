#include "softjig/cli.hpp"

int main(int argc, char** argv) { return softjig::run_cli(argc, argv); }
