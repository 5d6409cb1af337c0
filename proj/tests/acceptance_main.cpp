#include <cstdlib>
#include <iostream>

#include "lipbvp/acceptance.hpp"

int main(int argc, char** argv) {
    lipbvp::AcceptanceConfig config;
    if (argc > 1) config.seed = std::strtoull(argv[1], nullptr, 10);
    int failed = 0;
    for (int id = 1; id <= lipbvp::kCriteria; ++id) {
        lipbvp::AcceptanceReport one;
        one.results.push_back(lipbvp::run_criterion(id, config));
        std::cout << lipbvp::summary_text(one) << std::flush;
        failed += !one.all_passed();
    }
    std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << " (" << lipbvp::kCriteria - failed << "/"
              << lipbvp::kCriteria << ")\n";
    return failed ? 1 : 0;
}
