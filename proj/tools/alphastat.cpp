#include "alphastat/cli.hpp"

int main(int argc, char** argv) { return alphastat::cli::run(argc, argv); }
