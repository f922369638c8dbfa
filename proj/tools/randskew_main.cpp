#include "randskew/cli/commands.hpp"

int main(int argc, char** argv) { return randskew::cli::run(argc, argv); }
