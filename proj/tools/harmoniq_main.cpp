#include "harmoniq/cli.hpp"

int main(int argc, char** argv) { return harmoniq::cli_main(argc, argv); }
