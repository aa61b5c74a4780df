#include "nodal/cli.hpp"

int main(int argc, char** argv) { return nodal::cli::main(argc, argv); }
