#pragma once

// Exact checks of the summation, extraction and inversion identities behind
// the structural formula for F_{2,4}.

#include <cstdint>
#include <string>
#include <vector>

#include "nilzeta/zetacore.hpp"

namespace nilzeta {

struct LemmaCheck {
    std::string name;
    std::string range;
    std::int64_t instances = 0;
    std::int64_t failures = 0;
    std::string first_failure;
    bool passed() const { return instances > 0 && failures == 0; }
};

// S(r) = sum over b in [1,r]^c of mu(r;b) T^{-t min(r,b)}
LaurentPoly shifting_sum(int r, int c, int t, int lo = 1);

LemmaCheck check_shifting(int max_r = 5);
LemmaCheck check_translation(int max_r = 5);
LemmaCheck check_binomial(int max_n = 6, int max_k = 5);
LemmaCheck check_crucial(int N = 40);
LemmaCheck check_upper_extraction(int N = 15);
LemmaCheck check_lower_extraction(int N = 15);
LemmaCheck check_exceptional_identity(int N = 40);
LemmaCheck check_decomposition(int N = 15);

struct InversionCheck {
    std::string name;
    FunctionalEquation observed;
    int expected_sign = 0;
    int expected_p = 0;
    int expected_t = 0;
    bool passed() const {
        return observed.found && observed.verified && observed.sign == expected_sign && observed.p_exp == expected_p &&
               observed.t_exp == expected_t;
    }
};

// Igusa factors, exceptional factors, Fano counts, W_0, n_i W_i, W_i and A.
std::vector<InversionCheck> inversion_identities();

struct LemmaSuite {
    std::vector<LemmaCheck> lemmas;
    std::vector<InversionCheck> inversions;
    bool passed() const;
};

LemmaSuite lemma_suite();

// Product of two T-series truncated at N.
std::vector<LaurentPoly> series_mul(const std::vector<LaurentPoly> &a, const std::vector<LaurentPoly> &b, int N);

} // namespace nilzeta
