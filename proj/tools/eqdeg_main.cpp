#include "eqdeg/pipeline.hpp"

int main(int argc, char** argv) { return eqdeg::cli_main(argc, argv); }
