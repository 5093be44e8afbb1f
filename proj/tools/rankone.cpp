#include "rankone/cli.hpp"

int main(int argc, char** argv) { return rankone::cli::main_entry(argc, argv); }
