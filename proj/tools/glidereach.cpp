#include "glide/cli.hpp"

int main(int argc, char** argv) { return glide::run_cli(argc, argv); }
