#include "nilzeta/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace nilzeta {

PrimeField::PrimeField(int q) : q_(q), inv_(static_cast<std::size_t>(q), 0) {
    if (q != 2 && q != 3 && q != 5) throw std::invalid_argument("PrimeField: only q in {2,3,5} is tabulated");
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if ((a * b) % q == 1) inv_[a] = b;
}

int pair_index(int i, int j, int d) {
    if (i > j) std::swap(i, j);
    int idx = 0;
    for (int a = 0; a < i; ++a) idx += d - 1 - a;
    return idx + (j - i - 1);
}

std::vector<FqVector> rref_mod(std::vector<FqVector> rows, const PrimeField &F) {
    if (rows.empty()) return rows;
    const int n = static_cast<int>(rows[0].size());
    int r = 0;
    for (int c = 0; c < n && r < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        int s = F.inv(rows[r][c]);
        for (int &x : rows[r]) x = F.mul(x, s);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            int f = rows[i][c];
            for (int j = 0; j < n; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
        }
        ++r;
    }
    rows.resize(static_cast<std::size_t>(r));
    return rows;
}

int rank_mod(std::vector<FqVector> rows, const PrimeField &F) {
    return static_cast<int>(rref_mod(std::move(rows), F).size());
}

std::vector<FqVector> ProjSubspace::span_vectors() const {
    std::vector<FqVector> out;
    const int k = static_cast<int>(rows.size());
    std::vector<int> c(static_cast<std::size_t>(k), 0);
    for (;;) {
        int s = k - 1;
        while (s >= 0 && ++c[s] == q) c[s--] = 0;
        if (s < 0) break;
        FqVector v(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j) v[j] = (v[j] + c[i] * rows[i][j]) % q;
        out.push_back(std::move(v));
    }
    return out;
}

int intersection_dim(const ProjSubspace &a, const ProjSubspace &b) {
    std::vector<FqVector> all = a.rows;
    all.insert(all.end(), b.rows.begin(), b.rows.end());
    return static_cast<int>(a.rows.size() + b.rows.size()) - rank_mod(all, PrimeField(a.q));
}

bool contained_in(const ProjSubspace &a, const ProjSubspace &b) {
    std::vector<FqVector> all = b.rows;
    all.insert(all.end(), a.rows.begin(), a.rows.end());
    return rank_mod(all, PrimeField(a.q)) == static_cast<int>(b.rows.size());
}

namespace {

// Calls fn on the RREF basis of every k-dimensional subspace of F_q^n.
void for_each_rref(int q, int n, int k, const std::function<void(const std::vector<FqVector> &)> &fn) {
    std::vector<int> piv(static_cast<std::size_t>(k));
    std::function<void(int, int)> choose = [&](int row, int start) {
        if (row == k) {
            std::vector<std::pair<int, int>> free;
            for (int r = 0; r < k; ++r)
                for (int j = piv[r] + 1; j < n; ++j)
                    if (std::find(piv.begin(), piv.end(), j) == piv.end()) free.emplace_back(r, j);
            std::vector<FqVector> rows(static_cast<std::size_t>(k), FqVector(static_cast<std::size_t>(n), 0));
            for (int r = 0; r < k; ++r) rows[r][piv[r]] = 1;
            const int nf = static_cast<int>(free.size());
            for (;;) {
                fn(rows);
                int s = nf - 1;
                while (s >= 0) {
                    int &v = rows[free[s].first][free[s].second];
                    if (++v < q) break;
                    v = 0;
                    --s;
                }
                if (s < 0) return;
            }
        }
        for (int c = start; c <= n - (k - row); ++c) {
            piv[row] = c;
            choose(row + 1, c + 1);
        }
    };
    choose(0, 0);
}

double grassmannian_size(int q, int n, int k) {
    BigRat v = gauss_binom(n, k).at(q);
    return v.get_d();
}

} // namespace

std::vector<ProjSubspace> enumerate_subspaces(int q, int n, int k, double budget) {
    PrimeField F(q);
    double est = grassmannian_size(q, n, k);
    if (est > budget)
        throw BudgetExceeded("enumerate_subspaces(q=" + std::to_string(q) + ", n=" + std::to_string(n) +
                                 ", k=" + std::to_string(k) + ")",
                             est, budget);
    std::vector<ProjSubspace> out;
    for_each_rref(q, n, k, [&](const std::vector<FqVector> &rows) { out.push_back(ProjSubspace{q, n, rows}); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ProjSubspace> enumerate_quadric(int q, int dim, double budget) {
    if (dim < 0 || dim > 2) throw std::invalid_argument("enumerate_quadric: dim must be 0, 1 or 2");
    PrimeField F(q);
    const int k = dim + 1;
    double est = grassmannian_size(q, 6, k) * std::pow(double(q), k);
    if (est > budget)
        throw BudgetExceeded("enumerate_quadric(q=" + std::to_string(q) + ", dim=" + std::to_string(dim) + ")", est,
                             budget);
    std::vector<ProjSubspace> out;
    for_each_rref(q, 6, k, [&](const std::vector<FqVector> &rows) {
        // Cheap rejection on the basis rows before walking the span.
        for (const auto &r : rows)
            if (F.reduce(pfaffian(std::array<int, 6>{r[0], r[1], r[2], r[3], r[4], r[5]})) != 0) return;
        ProjSubspace s{q, 6, rows};
        for (const auto &v : s.span_vectors())
            if (F.reduce(pfaffian(std::array<int, 6>{v[0], v[1], v[2], v[3], v[4], v[5]})) != 0) return;
        out.push_back(std::move(s));
    });
    std::sort(out.begin(), out.end());
    return out;
}

Rulings classify_rulings(const std::vector<ProjSubspace> &planes) {
    Rulings out;
    if (planes.empty()) return out;
    const int q = planes.front().q;
    const std::size_t n = planes.size();
    auto same = [&](std::size_t i, std::size_t j) { return intersection_dim(planes[i], planes[j]) % 2 == 1; };
    std::vector<int> cls(n);
    for (std::size_t i = 0; i < n; ++i) cls[i] = same(0, i) ? 0 : 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (same(i, j) != (cls[i] == cls[j]))
                throw std::logic_error("classify_rulings: planes do not split into two intersection classes");
    ProjSubspace anchor{q, 6, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}}};
    auto it = std::find(planes.begin(), planes.end(), anchor);
    if (it == planes.end()) throw std::logic_error("classify_rulings: anchor plane <e1,e2,e3> missing");
    int a_cls = cls[static_cast<std::size_t>(it - planes.begin())];
    for (std::size_t i = 0; i < n; ++i) (cls[i] == a_cls ? out.a : out.b).push_back(planes[i]);
    return out;
}

int stacked_rank(const std::vector<FqVector> &vectors, int q) {
    PrimeField F(q);
    // The system g M(v_1) = g M(v_2) = ... = 0; rank of the 4 x 4k block row,
    // computed as the rank of its transpose.
    std::vector<FqVector> rows;
    for (const auto &v : vectors) {
        std::array<int, 6> y{};
        for (int i = 0; i < 6; ++i) y[i] = F.reduce(v[i]);
        auto M = relation_matrix(y);
        for (int c = 0; c < 4; ++c) {
            FqVector r(4);
            for (int i = 0; i < 4; ++i) r[i] = F.reduce(M(i, c));
            rows.push_back(std::move(r));
        }
    }
    return rows.empty() ? 0 : rank_mod(rows, F);
}

std::int64_t count_flags_brute(int q, const FlagType &ft, double budget) {
    ft.validate();
    const int n = ft.m + 1;
    // V_i has dimension n - i; the chain runs from the largest space down.
    std::vector<std::vector<ProjSubspace>> levels;
    for (int i : ft.I) levels.push_back(enumerate_subspaces(q, n, n - i, budget));
    std::function<std::int64_t(std::size_t, const ProjSubspace *)> walk = [&](std::size_t lvl,
                                                                            const ProjSubspace *outer) {
        if (lvl == levels.size()) return std::int64_t{1};
        std::int64_t c = 0;
        for (const auto &s : levels[lvl])
            if (outer == nullptr || contained_in(s, *outer)) c += walk(lvl + 1, &s);
        return c;
    };
    return walk(0, nullptr);
}

} // namespace nilzeta
