#include "cli.hpp"

int main(int argc, char** argv) {
    return orgflow::cli::run(argc, argv);
}
