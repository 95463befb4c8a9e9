#include "cli.hpp"

int main(int argc, char** argv) { return parsuffix::cli::run(argc, argv); }
