#include "entwb/app.hpp"

int main(int argc, char** argv) { return entwb::run_cli(argc, argv); }
