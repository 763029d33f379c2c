#include "pennyfrac/validation.hpp"

#include <cstring>

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    auto results = pennyfrac::run_acceptance_suite(quick);
    return pennyfrac::report(results) ? 0 : 1;
}
