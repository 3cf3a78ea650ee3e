// One PASS/FAIL line per acceptance criterion; optional arguments select ids.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "gue/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    const auto results = gue::run_acceptance(ids, std::cout);
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
