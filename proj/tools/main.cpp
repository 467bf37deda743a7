#include "vadeval/cli.hpp"

int main(int argc, char** argv) { return vadeval::cli::run(argc, argv); }
