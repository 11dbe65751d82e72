#include "wrs/cli.hpp"

int main(int argc, char** argv) { return wrs::cli::run(argc, argv); }
