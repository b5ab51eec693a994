#include "qbmm/harness.hpp"

int main(int argc, char** argv) { return qbmm::cli_main(argc, argv); }
