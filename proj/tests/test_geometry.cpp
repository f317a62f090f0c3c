#include <doctest.h>

#include <set>

#include "gen.hpp"
#include "nilzeta/geometry.hpp"

using namespace nilzeta;

namespace {

std::int64_t brute_quadric_points(int q) {
    std::int64_t n = 0;
    std::array<std::int64_t, 6> y{};
    for (std::int64_t code = 1; code < std::int64_t(q) * q * q * q * q * q; ++code) {
        std::int64_t c = code;
        for (int i = 0; i < 6; ++i, c /= q) y[i] = c % q;
        n += pfaffian(y) % q == 0;
    }
    return n / (q - 1);
}

std::int64_t det4(const Eigen::Matrix<std::int64_t, 4, 4> &m) {
    std::int64_t s = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                    int inv = (a > b) + (a > c) + (a > d) + (b > c) + (b > d) + (c > d);
                    s += (inv % 2 ? -1 : 1) * m(0, a) * m(1, b) * m(2, c) * m(3, d);
                }
    return s;
}

bool inside_quadric(const ProjSubspace &s) {
    for (const auto &v : s.span_vectors()) {
        std::array<std::int64_t, 6> y{};
        for (int i = 0; i < 6; ++i) y[i] = v[i];
        if (pfaffian(y) % s.q != 0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("prime field") {
    PrimeField F(5);
    CHECK(F.mul(F.inv(3), 3) == 1);
    CHECK(F.sub(1, 3) == 3);
    CHECK(F.reduce(-7) == 3);
}

TEST_CASE("pair index is lexicographic") {
    CHECK(pair_index(0, 1, 4) == 0);
    CHECK(pair_index(0, 3, 4) == 2);
    CHECK(pair_index(1, 2, 4) == 3);
    CHECK(pair_index(2, 3, 4) == 5);
    CHECK(pair_index(3, 4, 5) == 9);
}

TEST_CASE("property: the Pfaffian squares to the determinant") {
    gen::Rng r(31);
    for (int it = 0; it < 300; ++it) {
        std::array<std::int64_t, 6> y{}, z{};
        for (int i = 0; i < 6; ++i) {
            y[i] = r.uniform(-9, 9);
            z[i] = r.uniform(-9, 9);
        }
        auto M = relation_matrix(y);
        CHECK(M.transpose() == -M);
        CHECK(pfaffian(y) * pfaffian(y) == det4(M));
        std::array<std::int64_t, 6> s{};
        for (int i = 0; i < 6; ++i) s[i] = y[i] + z[i];
        CHECK(pfaffian_polar(y, z) == pfaffian(s) - pfaffian(y) - pfaffian(z));
        CHECK(pfaffian_polar(y, y) == 2 * pfaffian(y));
    }
}

TEST_CASE("subspace enumeration matches Gaussian binomials") {
    for (int q : {2, 3})
        for (int n = 1; n <= 4; ++n)
            for (int k = 0; k <= n; ++k) {
                auto all = enumerate_subspaces(q, n, k);
                CHECK(gauss_binom(n, k).at(q) == static_cast<long>(all.size()));
                CHECK(std::set<ProjSubspace>(all.begin(), all.end()).size() == all.size());
            }
    CHECK_THROWS_AS(enumerate_subspaces(5, 6, 3, 100), BudgetExceeded);
}

TEST_CASE("linear subspaces of the quadric") {
    for (int q : {2, 3}) {
        const std::int64_t q2 = q * q, q3 = q2 * q;
        auto pts = enumerate_quadric(q, 0);
        auto lines = enumerate_quadric(q, 1);
        auto planes = enumerate_quadric(q, 2);
        CHECK(static_cast<std::int64_t>(pts.size()) == brute_quadric_points(q));
        // Klein correspondence: points are lines of P^3, lines are
        // point-plane flags of P^3, planes are points and planes of P^3.
        CHECK(static_cast<std::int64_t>(pts.size()) == (q2 + 1) * (q2 + q + 1));
        CHECK(static_cast<std::int64_t>(lines.size()) == (q3 + q2 + q + 1) * (q2 + q + 1));
        CHECK(static_cast<std::int64_t>(planes.size()) == 2 * (q3 + q2 + q + 1));
        for (const auto &s : lines) CHECK(inside_quadric(s));
        for (const auto &s : planes) CHECK(inside_quadric(s));

        Rulings ru = classify_rulings(planes);
        CHECK(ru.a.size() == ru.b.size());
        for (const auto &x : ru.a)
            for (const auto &y : ru.b) CHECK(intersection_dim(x, y) % 2 == 0);
        std::set<int> ra, rb;
        for (const auto &s : ru.a) ra.insert(stacked_rank(s.span_vectors(), q));
        for (const auto &s : ru.b) rb.insert(stacked_rank(s.span_vectors(), q));
        CHECK(ra == std::set<int>{4});
        CHECK(rb == std::set<int>{3});

        // Every line lies in exactly one plane of each ruling.
        for (std::size_t i = 0; i < lines.size(); i += lines.size() / 7 + 1) {
            int in_a = 0, in_b = 0;
            for (const auto &s : ru.a) in_a += contained_in(lines[i], s);
            for (const auto &s : ru.b) in_b += contained_in(lines[i], s);
            CHECK(in_a == 1);
            CHECK(in_b == 1);
        }
    }
}

TEST_CASE("classify_rulings rejects a set that is not two classes") {
    auto planes = enumerate_subspaces(2, 6, 3);
    planes.resize(40);
    CHECK_THROWS_AS(classify_rulings(planes), std::logic_error);
}

TEST_CASE("rank and intersection helpers") {
    PrimeField F(3);
    CHECK(rank_mod({{1, 2, 0}, {2, 1, 0}}, F) == 1);
    CHECK(rref_mod({{2, 1, 0}}, F) == std::vector<FqVector>{{1, 2, 0}});
    ProjSubspace a{3, 3, {{1, 0, 0}, {0, 1, 0}}}, b{3, 3, {{0, 1, 0}, {0, 0, 1}}};
    CHECK(intersection_dim(a, b) == 1);
    CHECK(a.proj_dim() == 1);
    CHECK(a.span_vectors().size() == 8);
    CHECK(contained_in(ProjSubspace{3, 3, {{1, 1, 0}}}, a));
    CHECK_FALSE(contained_in(b, a));
}

TEST_CASE("brute-force flags") {
    CHECK(count_flags_brute(2, {2, {1, 2}}) == 21);
    CHECK(count_flags_brute(2, {5, {}}) == 1);
    CHECK(count_flags_brute(3, {3, {2}}) == gauss_binom(4, 2).at(3));
}
