#include "cli_app.hpp"

int main(int argc, char** argv) { return innerdyn::cli::run(argc, argv); }
