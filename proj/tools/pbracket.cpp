#include "pbracket/cli.hpp"

int main(int argc, char** argv) { return pbracket::cli::run(argc, argv); }
