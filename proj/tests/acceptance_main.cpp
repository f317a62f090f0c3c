// One line per acceptance criterion; exit status 0 iff every hard check passes.

#include <algorithm>
#include <iostream>
#include <thread>

#include "nilzeta/acceptance.hpp"

int main() {
    using namespace nilzeta;
    AcceptanceConfig cfg;
    cfg.oracle.threads = std::max(1u, std::thread::hardware_concurrency());
    cfg.cache = ResultCache(ResultCache::default_dir());
    std::cout << "cache: " << cfg.cache.dir().string() << ", threads: " << cfg.oracle.threads << std::endl;
    auto results = run_acceptance(cfg, [](const CriterionResult &r) { std::cout << format_line(r) << std::endl; });
    const bool ok = all_hard_passed(results);
    std::cout << (ok ? "ALL HARD CRITERIA PASS" : "HARD CRITERIA FAILED") << std::endl;
    return ok ? 0 : 1;
}
