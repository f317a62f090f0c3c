#include <doctest.h>

#include <numeric>

#include "gen.hpp"
#include "nilzeta/lemmas.hpp"

using namespace nilzeta;

namespace {

// sum over x in (q^lo Z/q^r Z)^c of T^{-t min(r, v(x))}, coefficientwise in T.
std::map<int, std::int64_t> shifting_brute(int q, int r, int c, int t, int lo) {
    std::int64_t Qlo = 1;
    for (int i = 0; i < lo; ++i) Qlo *= q;
    std::int64_t Q = 1;
    for (int i = 0; i < r; ++i) Q *= q;
    std::int64_t total = 1;
    for (int i = 0; i < c; ++i) total *= Q;
    std::map<int, std::int64_t> out;
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t g = 0, x = code;
        bool keep = true;
        for (int i = 0; i < c; ++i, x /= Q) {
            keep = keep && (x % Q) % Qlo == 0;
            g = std::gcd(g, x % Q);
        }
        if (!keep) continue;
        int v = 0;
        if (g == 0) v = r;
        else
            while (v < r && g % q == 0) {
                g /= q;
                ++v;
            }
        ++out[-t * v];
    }
    return out;
}

} // namespace

TEST_CASE("the lemma suite passes") {
    LemmaSuite s = lemma_suite();
    CHECK(s.passed());
    CHECK(s.lemmas.size() == 8);
    for (const auto &l : s.lemmas) {
        INFO(l.name);
        CHECK(l.instances > 0);
        CHECK(l.failures == 0);
        CHECK(l.first_failure.empty());
    }
    CHECK(s.inversions.size() >= 14);
    for (const auto &i : s.inversions) {
        INFO(i.name);
        CHECK(i.passed());
    }
}

TEST_CASE("an empty check does not pass") {
    LemmaCheck c;
    CHECK_FALSE(c.passed());
    c.instances = 3;
    c.failures = 1;
    CHECK_FALSE(c.passed());
}

TEST_CASE("shifting sums count vectors by valuation") {
    for (int q : {2, 3})
        for (int r = 1; r <= 3; ++r)
            for (int c = 1; c <= 3; ++c)
                for (int lo : {1, 2}) {
                    if (lo > r || (q == 3 && r == 3 && c == 3)) continue;
                    const int t = lo == 1 ? 1 : 2;
                    LaurentPoly s = shifting_sum(r, c, t, lo);
                    auto brute = shifting_brute(q, r, c, t, lo);
                    for (const auto &[e, n] : brute) CHECK(s.t_coeff(e).at(q) == n);
                    for (const auto &kv : s.terms()) CHECK(brute.count(kv.first.t) == 1);
                }
    CHECK_THROWS_AS(shifting_sum(0, 1, 1), std::invalid_argument);
}

TEST_CASE("series_mul is the truncated Cauchy product") {
    gen::Rng r(51);
    for (int it = 0; it < 20; ++it) {
        RatFun x = gen::ratfun(r), y = gen::ratfun(r);
        CHECK(series_mul(rf_series(x, 9), rf_series(y, 9), 9) == rf_series(x * y, 9));
    }
}

TEST_CASE("property: Igusa factors invert with a fixed sign and p-power") {
    gen::Rng r(52);
    for (int it = 0; it < 25; ++it) {
        const int m = r.uniform(1, 4);
        std::vector<NumericalDatum> vars;
        for (int k = 0; k < m; ++k) vars.push_back({r.uniform(0, 12), r.uniform(1, 6)});
        FunctionalEquation fe = inversion_monomial(igusa(m, vars));
        CHECK(fe.found);
        CHECK(fe.verified);
        CHECK(fe.sign == (m % 2 ? -1 : 1));
        CHECK(fe.p_exp == m * (m + 1) / 2);
        CHECK(fe.t_exp == 0);
    }
}
