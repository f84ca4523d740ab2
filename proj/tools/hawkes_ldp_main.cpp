#include <string>
#include <vector>

#include "hawkes/cli_app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hawkes::run(args);
}
