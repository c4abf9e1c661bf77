#include "smtkit/cli.h"

int main(int argc, char** argv) { return smtkit::cli::run(argc, argv); }
