#pragma once

#include <string>
#include <vector>

#include "nilzeta/cache.hpp"
#include "nilzeta/oracle.hpp"

namespace nilzeta {

enum ExitCode { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitBudget = 3 };

struct RunConfig {
    std::string group = "F24";
    std::vector<int> primes;
    int N = 0;
    double budget = kDefaultBudget;
    bool allow_large_budget = false;
    std::string cache_dir; // empty: ResultCache::default_dir()
    bool no_cache = false;
    std::string format = "text"; // text | json
    int threads = 1;
    bool envelope = false; // zeta commands only

    // Throws std::invalid_argument on a violated invariant.
    void validate() const;
    bool json() const { return format == "json"; }
    OracleOptions oracle() const { return {budget, threads}; }
    ResultCache cache() const;
};

// Parses argv, dispatches to the subcommand and returns the process exit code.
int run_cli(int argc, char **argv);

} // namespace nilzeta
