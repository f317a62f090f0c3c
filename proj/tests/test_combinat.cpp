#include <doctest.h>

#include <functional>
#include <map>

#include "nilzeta/combinat.hpp"
#include "nilzeta/geometry.hpp"
#include "nilzeta/intlinalg.hpp"

using namespace nilzeta;

namespace {

const LaurentPoly P = LaurentPoly::p();

// Number of k-dimensional subspaces of F_q^n from the product formula.
BigRat gaussian_at(int n, int k, int q) {
    auto qpow = [q](int e) {
        BigInt r = 1;
        for (int i = 0; i < e; ++i) r *= q;
        return r;
    };
    BigRat out = 1;
    for (int i = 0; i < k; ++i) out *= BigRat(qpow(n - i) - 1, qpow(i + 1) - 1);
    out.canonicalize();
    return out;
}

} // namespace

TEST_CASE("gaussian binomials") {
    CHECK(gauss_binom(4, 2) == 1 + P + 2 * P * P + pow(P, 3) + pow(P, 4));
    CHECK(gauss_binom(3, 0) == 1);
    CHECK(gauss_binom(3, 4).is_zero());
    for (int n = 0; n <= 7; ++n)
        for (int k = 0; k <= n; ++k)
            for (int q : {2, 3, 5}) CHECK(gauss_binom(n, k).at(q) == gaussian_at(n, k, q));
}

TEST_CASE("flag counts and dimensions") {
    CHECK(flag_count({5, {}}) == 1);
    CHECK(flag_count({5, {1}}) == gauss_binom(6, 1));
    CHECK(flag_count({2, {1, 2}}) == (1 + P) * (1 + P + P * P));
    CHECK(flag_dim({5, {1, 2, 3, 4, 5}}) == 15);
    CHECK(flag_dim({5, {3}}) == 9);
    CHECK_THROWS_AS(flag_count({3, {2, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(flag_count({3, {4}}), std::invalid_argument);
}

TEST_CASE("property: flag varieties satisfy Poincare duality") {
    for (int m = 0; m <= 6; ++m)
        for (const auto &I : subsets(m)) {
            FlagType ft{m, I};
            LaurentPoly b = flag_count(ft);
            CHECK(b.p_inverted().shifted(flag_dim(ft), 0) == b);
        }
}

TEST_CASE("flag counts agree with brute force over F_2 and F_3") {
    for (int q : {2, 3})
        for (int m = 1; m <= 3; ++m)
            for (const auto &I : subsets(m)) {
                if (q == 3 && m == 3 && I.size() > 2) continue;
                FlagType ft{m, I};
                CHECK(flag_count(ft).at(q) == count_flags_brute(q, ft));
            }
}

TEST_CASE("mu") {
    CHECK(mu(3, 3) == 1);
    CHECK(mu(2, 3).is_zero());
    CHECK(mu(4, 2) == P * P - P);
    CHECK_THROWS_AS(mu(0, 1), std::invalid_argument);
}

TEST_CASE("sublattice counts") {
    CHECK(sublattice_count(2, 1) == 1 + P);
    CHECK(sublattice_count(6, 1) == gauss_binom(6, 1));
    CHECK(sublattice_count(3, -1).is_zero());
    // Series of prod_{j<d} 1/(1 - p^j T) against HNF diagonal counts.
    for (int d = 1; d <= 6; ++d)
        for (int k = 0; k <= 4; ++k)
            for (int q : {2, 3}) {
                std::int64_t total = 0;
                for (const auto &e : diagonal_compositions(d, k)) total += hnf_count_with_diagonal(q, e);
                CHECK(sublattice_count(d, k).at(q) == total);
            }
}

TEST_CASE("property: lattice types of weight k partition the sublattices of index p^k") {
    for (int k = 0; k <= 5; ++k) {
        LaurentPoly sum;
        std::map<int, int> r;
        // Every type of weight k: partitions of k into parts i * r_i.
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == 6) {
                if (left == 0) sum += lattice_type_count({r});
                return;
            }
            for (int ri = 0; ri * i <= left; ++ri) {
                if (ri > 0) r[i] = ri;
                else r.erase(i);
                rec(i + 1, left - ri * i);
            }
            r.erase(i);
        };
        rec(1, k);
        CHECK(sum == sublattice_count(6, k));
    }
}

TEST_CASE("lattice type counts match divisor types of enumerated lattices in Z^3") {
    for (int q : {2, 3})
        for (int k = 0; k <= 3; ++k) {
            std::map<std::pair<LatticeType, int>, std::int64_t> hist;
            enumerate_sublattices(3, q, k, [&](const SmallHNF<10> &L) {
                auto t = divisor_type(L, q);
                ++hist[{t.type, t.scalar}];
            });
            for (const auto &[key, n] : hist) {
                CHECK(3 * key.second + key.first.weight() == k);
                CHECK(lattice_type_count(key.first, 3).at(q) == n);
            }
        }
}

TEST_CASE("lattice type helpers") {
    LatticeType t{{{1, 2}, {3, 1}}};
    CHECK(t.I() == std::vector<int>{1, 3});
    CHECK(t.weight() == 5);
    CHECK(t.to_string() == "{1:2,3:1}");
    CHECK(lattice_type_count({{{1, 1}}}) == gauss_binom(6, 1));
    CHECK_THROWS_AS(lattice_type_count({{{1, 0}}}), std::invalid_argument);
    CHECK(subsets(2) == std::vector<std::vector<int>>{{}, {1}, {2}, {1, 2}});
}
