#include <doctest.h>

#include <numeric>
#include <set>

#include "gen.hpp"
#include "nilzeta/intlinalg.hpp"

using namespace nilzeta;
using M64 = IntMatrix<std::int64_t>;

namespace {

M64 random_unimodular(gen::Rng &r, int d) {
    M64 U = M64::Identity(d, d);
    for (int s = 0; s < 3 * d; ++s) {
        int i = r.uniform(0, d - 1), j = r.uniform(0, d - 1);
        if (i == j) continue;
        U.col(i) += r.uniform(-2, 2) * U.col(j);
    }
    if (r.coin()) U.col(0) = -U.col(0);
    return U;
}

std::int64_t det_laplace(const M64 &m) {
    const int d = static_cast<int>(m.rows());
    if (d == 1) return m(0, 0);
    std::int64_t s = 0;
    for (int j = 0; j < d; ++j) {
        M64 minor(d - 1, d - 1);
        for (int r = 1; r < d; ++r)
            for (int c = 0, cc = 0; c < d; ++c)
                if (c != j) minor(r - 1, cc++) = m(r, c);
        s += (j % 2 ? -1 : 1) * m(0, j) * det_laplace(minor);
    }
    return s;
}

template <typename S, int D>
bool is_hnf(const SublatticeHNF<S, D> &L) {
    for (int i = 0; i < L.dim(); ++i) {
        if (L.basis(i, i) <= 0) return false;
        for (int j = 0; j < L.dim(); ++j) {
            if (j < i && L.basis(i, j) != 0) return false;
            if (j > i && (L.basis(i, j) < 0 || L.basis(i, j) >= L.basis(i, i))) return false;
        }
    }
    return true;
}

// |Z^{ds} : X| by counting g mod q^E with A g in L, blockwise.
int kernel_index_brute(const M64 &A, const SmallHNF<10> &L, int q, int E, int ds) {
    const int d = L.dim();
    const std::int64_t Q = detail::ipow(q, E);
    std::int64_t total = detail::ipow(Q, ds), hits = 0;
    for (std::int64_t code = 0; code < total; ++code) {
        IntVector<std::int64_t> g(ds);
        std::int64_t c = code;
        for (int i = 0; i < ds; ++i, c /= Q) g(i) = c % Q;
        IntVector<std::int64_t> img = A * g;
        bool ok = true;
        for (int b = 0; ok && b < A.rows() / d; ++b) ok = L.contains(img.segment(b * d, d));
        hits += ok;
    }
    int e = 0;
    for (std::int64_t x = total / hits; x > 1; x /= q) ++e;
    return e;
}

} // namespace

TEST_CASE("hnf of a small example") {
    M64 m(2, 2);
    m << 2, 1, 0, 3;
    auto H = hnf(m);
    M64 expect(2, 2);
    expect << 2, 1, 0, 3;
    CHECK(H.basis == expect);
    CHECK(H.index() == 6);
    IntVector<std::int64_t> v(2);
    v << 3, 3;
    CHECK(H.contains(v));
    v << 1, 0;
    CHECK_FALSE(H.contains(v));
    M64 singular(2, 2);
    singular << 1, 2, 2, 4;
    CHECK_THROWS_AS(hnf(singular), std::invalid_argument);
}

TEST_CASE("property: hnf is canonical and index is |det|") {
    gen::Rng r(21);
    for (int it = 0; it < 300; ++it) {
        const int d = r.uniform(1, 5);
        M64 m = gen::full_rank(r, d, 6);
        auto H = hnf(m);
        CHECK(is_hnf(H));
        CHECK(H.index() == std::abs(det_laplace(m)));
        CHECK(hnf(m * random_unimodular(r, d)) == H);
        CHECK(hnf(H.basis) == H);
        for (int j = 0; j < d; ++j) CHECK(H.contains(m.col(j)));
        IntMatrix<mpz_class> mz = m.cast<mpz_class>();
        CHECK(hnf(mz).basis == H.basis.cast<mpz_class>());
    }
}

TEST_CASE("property: hnf of redundant generators") {
    gen::Rng r(22);
    for (int it = 0; it < 100; ++it) {
        const int d = r.uniform(1, 4);
        M64 m = gen::full_rank(r, d, 5);
        M64 wide(d, d + 2);
        wide << m, m.col(0) * r.uniform(-3, 3) + m.col(d - 1), m.col(0) * 2;
        CHECK(hnf(wide) == hnf(m));
    }
}

TEST_CASE("property: smith normal form") {
    gen::Rng r(23);
    for (int it = 0; it < 300; ++it) {
        const int rows = r.uniform(1, 4), cols = r.uniform(1, 4);
        M64 m = gen::int_matrix(r, rows, cols, 9);
        M64 S = snf(m);
        const int t = std::min(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (i != j) CHECK(S(i, j) == 0);
        for (int i = 0; i + 1 < t; ++i) {
            CHECK(S(i, i) >= 0);
            if (S(i, i) != 0) CHECK(S(i + 1, i + 1) % S(i, i) == 0);
            else CHECK(S(i + 1, i + 1) == 0);
        }
        std::int64_t g = 0;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) g = std::gcd(g, m(i, j));
        CHECK(S(0, 0) == g);
        M64 moved = random_unimodular(r, rows).transpose() * m * random_unimodular(r, cols);
        CHECK(snf(moved) == S);
        if (rows == cols) {
            std::int64_t prod = 1;
            for (int i = 0; i < t; ++i) prod *= S(i, i);
            CHECK(prod == std::abs(det_laplace(m)));
        }
        CHECK(snf(IntMatrix<mpz_class>(m.cast<mpz_class>())) == S.cast<mpz_class>());
    }
}

TEST_CASE("enumeration streams each sublattice once") {
    for (int d = 1; d <= 4; ++d)
        for (int q : {2, 3})
            for (int k = 0; k <= 3; ++k) {
                std::set<std::vector<std::int64_t>> seen;
                std::int64_t n = 0;
                bool canonical = true;
                enumerate_sublattices(d, q, k, [&](const SmallHNF<10> &L) {
                    ++n;
                    canonical = canonical && is_hnf(L) && L.index() == detail::ipow(q, k) &&
                                hnf(L.basis).basis == L.basis;
                    seen.insert(std::vector<std::int64_t>(L.basis.data(), L.basis.data() + d * d));
                });
                CHECK(canonical);
                CHECK(n == static_cast<std::int64_t>(seen.size()));
                CHECK(sublattice_count(d, k).at(q) == n);
            }
}

TEST_CASE("budget guard") {
    CHECK(enumeration_estimate(6, 3, 10) == doctest::Approx(std::pow(3.0, 50)));
    CHECK_THROWS_AS(enumerate_sublattices(6, 3, 10, [](const SmallHNF<10> &) {}, 1e3), BudgetExceeded);
    try {
        enumerate_sublattices(3, 2, 20, [](const SmallHNF<10> &) {}, 10);
    } catch (const BudgetExceeded &e) {
        CHECK(e.budget() == 10);
        CHECK(e.needed() > 10);
    }
}

TEST_CASE("prime powers") {
    CHECK(prime_power(1) == std::pair<std::int64_t, int>{1, 0});
    CHECK(prime_power(81) == std::pair<std::int64_t, int>{3, 4});
    CHECK(prime_power(7) == std::pair<std::int64_t, int>{7, 1});
    CHECK_THROWS_AS(prime_power(12), std::invalid_argument);
    CHECK_THROWS_AS(prime_power(0), std::invalid_argument);
}

TEST_CASE("divisor types") {
    M64 m = M64::Identity(4, 4) * 2;
    m(3, 3) = 8;
    auto t = divisor_type(hnf(m), 2);
    CHECK(t.scalar == 1);
    CHECK(t.type.r == std::map<int, int>{{1, 2}});
    m = M64::Identity(3, 3);
    m(0, 0) = 3;
    m(0, 1) = 1;
    m(1, 1) = 3;
    t = divisor_type(hnf(m), 3);
    CHECK(t.scalar == 0);
    CHECK(t.type.r == std::map<int, int>{{1, 2}});
    CHECK_THROWS_AS(divisor_type(hnf(M64::Identity(2, 2) * 6), 2), std::invalid_argument);
}

TEST_CASE("property: kernel_index against brute-force counting") {
    gen::Rng r(24);
    for (int it = 0; it < 120; ++it) {
        const int q = r.coin() ? 2 : 3;
        const int d = r.uniform(1, 3), ds = r.uniform(1, 2), blocks = r.uniform(1, 2);
        const int k = r.uniform(0, q == 2 ? 3 : 2);
        std::vector<SmallHNF<10>> lattices;
        enumerate_sublattices(d, q, k, [&](const SmallHNF<10> &L) { lattices.push_back(L); });
        const auto &L = lattices[r.uniform(0, static_cast<int>(lattices.size()) - 1)];
        M64 A = gen::int_matrix(r, blocks * d, ds, 6);
        // q^k Z^d lies in L, so residues mod q^k suffice.
        CHECK(kernel_index(A, L, ds) == kernel_index_brute(A, L, q, std::max(k, 1), ds));
    }
    M64 A(2, 1);
    CHECK_THROWS_AS(kernel_index(A, SmallHNF<10>{M64::Identity(3, 3)}, 1), std::invalid_argument);
}
