#include "nilzeta/combinat.hpp"

#include <stdexcept>

namespace nilzeta {

void FlagType::validate() const {
    if (m < 0) throw std::invalid_argument("FlagType: negative arity");
    int prev = 0;
    for (int i : I) {
        if (i <= prev || i > m) throw std::invalid_argument("FlagType: I must be strictly increasing inside 1..m");
        prev = i;
    }
}

std::vector<int> LatticeType::I() const {
    std::vector<int> out;
    for (const auto &kv : r) out.push_back(kv.first);
    return out;
}

int LatticeType::weight() const {
    int w = 0;
    for (const auto &[i, ri] : r) w += i * ri;
    return w;
}

std::string LatticeType::to_string() const {
    std::string s = "{";
    bool first = true;
    for (const auto &[i, ri] : r) {
        if (!first) s += ",";
        s += std::to_string(i) + ":" + std::to_string(ri);
        first = false;
    }
    return s + "}";
}

LaurentPoly gauss_binom(int n, int k) {
    if (k < 0 || k > n) return LaurentPoly();
    // [n,k] = [n-1,k-1] + p^k [n-1,k]
    std::vector<LaurentPoly> row(static_cast<std::size_t>(k) + 1);
    row[0] = 1;
    for (int j = 1; j <= n; ++j)
        for (int i = std::min(j, k); i >= 1; --i) row[i] = row[i - 1] + row[i].shifted(i, 0);
    return row[k];
}

LaurentPoly flag_count(const FlagType &ft) {
    ft.validate();
    LaurentPoly r(1);
    int prev = ft.m + 1;
    for (auto it = ft.I.rbegin(); it != ft.I.rend(); ++it) {
        r *= gauss_binom(prev, *it);
        prev = *it;
    }
    return r;
}

int flag_dim(const FlagType &ft) { return flag_count(ft).max_p(); }

LaurentPoly mu(int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("mu: arguments must be positive");
    if (a == b) return 1;
    if (a < b) return LaurentPoly();
    return LaurentPoly::p(a - b) - LaurentPoly::p(a - b - 1);
}

LaurentPoly sublattice_count(int d, int k) {
    if (k < 0) return LaurentPoly();
    std::vector<LaurentPoly> c(static_cast<std::size_t>(k) + 1);
    c[0] = 1;
    for (int j = 0; j < d; ++j)
        for (int n = 1; n <= k; ++n) c[n] += c[n - 1].shifted(j, 0);
    return c[k];
}

LaurentPoly lattice_type_count(const LatticeType &t, int dim) {
    FlagType ft{dim - 1, t.I()};
    int e = -flag_dim(ft);
    for (const auto &[i, ri] : t.r) {
        if (ri < 1) throw std::invalid_argument("lattice_type_count: r_i must be positive");
        e += (dim - i) * i * ri;
    }
    return flag_count(ft).shifted(e, 0);
}

std::vector<std::vector<int>> subsets(int m) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) s.push_back(i + 1);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace nilzeta
