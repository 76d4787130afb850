#include "hibicx/io.hpp"

int main(int argc, char** argv) { return hibicx::run_cli(argc, argv); }
