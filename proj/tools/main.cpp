#include "app.hpp"

int main(int argc, char** argv) { return ingham::cli::run(argc, argv); }
