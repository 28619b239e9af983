#include "lo2d/cli.hpp"

int main(int argc, char **argv) { return lo2d::cli::run(argc, argv); }
