#include "nnr/cli.hpp"

int main(int argc, char** argv) { return nnr::cli::dispatch(argc, argv); }
