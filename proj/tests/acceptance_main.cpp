#include "acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    bool ok = true;
    lorcone::acceptance::run(only, [&](const lorcone::acceptance::CriterionResult& r) {
        std::cout << lorcone::acceptance::format(r) << std::endl;
        ok = ok && r.passed;
    });
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
