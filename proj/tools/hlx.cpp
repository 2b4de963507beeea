#include "hlx/cli.hpp"

int main(int argc, char** argv) { return hlx::cli::main(argc, argv); }
