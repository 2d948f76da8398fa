#include "circtv/cli.hpp"

int main(int argc, char** argv) { return circtv::cli::run(argc, argv); }
