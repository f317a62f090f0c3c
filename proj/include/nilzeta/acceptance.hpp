#pragma once

// The acceptance criteria as executable checks. Each criterion has a hard
// part that gates the verdict and, where the exceptional-prime caveat
// applies, a soft part that is reported only.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilzeta/cache.hpp"
#include "nilzeta/oracle.hpp"

namespace nilzeta {

// count_normal_sublattices_upto through the result cache.
CountResult cached_central_counts(const LieRingSpec &spec, int q, int n, const OracleOptions &opt,
                                  const ResultCache &cache);
std::vector<BigInt> cached_direct_counts(const LieRingSpec &spec, int q, int n, const OracleOptions &opt,
                                         const ResultCache &cache);

// a_{q^0..q^n} from the structural formula, evaluated at p = q.
std::vector<BigInt> formula_counts(Group g, int q, int n);

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::optional<bool> soft_passed;
    std::string detail;
    std::vector<std::string> failures;
    std::vector<std::string> soft_failures;
    double runtime_ms = 0;
};

struct AcceptanceConfig {
    OracleOptions oracle;
    ResultCache cache;
};

// Runs criteria 1..11 in order; on_result fires as each completes.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig &cfg,
                                            const std::function<void(const CriterionResult &)> &on_result = {});

std::string format_line(const CriterionResult &r);
// {"passed", "hard_failures", "criteria"}; runtime fields only when timing is set.
nlohmann::ordered_json verdict_json(const std::vector<CriterionResult> &results, bool timing = false);
bool all_hard_passed(const std::vector<CriterionResult> &results);

} // namespace nilzeta
