#include "snewton/config.hpp"

int main(int argc, char** argv) { return snewton::run_cli(argc, argv); }
