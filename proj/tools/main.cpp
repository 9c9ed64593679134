#include "cli_main.hpp"

int main(int argc, char** argv) { return vitalradar::cli_main(argc, argv); }
