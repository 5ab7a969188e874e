#include "mcirr/cli.hpp"

int main(int argc, char** argv) { return mcirr::cli::run(argc, argv); }
