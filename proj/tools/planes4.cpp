#include "planes4/cli.hpp"

int main(int argc, char** argv) { return planes4::run_command(argc, argv); }
