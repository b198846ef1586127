#include <thompson_cantor/cli.hpp>

int main(int argc, char** argv) { return thompson_cantor::cli::run(argc, argv); }
