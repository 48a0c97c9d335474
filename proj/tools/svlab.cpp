#include "svlab/cli.hpp"

int main(int argc, char** argv) { return svlab::cli::run(argc, argv); }
