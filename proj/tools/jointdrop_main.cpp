#include "commands.hpp"

int main(int argc, char** argv) { return jointdrop::cli::Run(argc, argv); }
