#include "cli.hpp"

int main(int argc, char** argv) { return tfspec::cli::run(argc, argv); }
