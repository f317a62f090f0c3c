#include "nilzeta/intlinalg.hpp"

#include <cmath>

namespace nilzeta {

namespace {
void compositions(int d, int k, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
    if (static_cast<int>(cur.size()) == d - 1) {
        cur.push_back(k);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int a = 0; a <= k; ++a) {
        cur.push_back(a);
        compositions(d, k - a, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<std::vector<int>> diagonal_compositions(int d, int k) {
    if (d < 1 || k < 0) throw std::invalid_argument("diagonal_compositions: need d >= 1, k >= 0");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    compositions(d, k, cur, out);
    return out;
}

double enumeration_estimate(int d, int q, int k) { return std::pow(double(q), double((d - 1) * k)); }

std::int64_t hnf_count_with_diagonal(int q, const std::vector<int> &exps) {
    const int d = static_cast<int>(exps.size());
    std::int64_t n = 1;
    for (int i = 0; i < d; ++i) n *= detail::ipow(q, exps[i] * (d - 1 - i));
    return n;
}

std::pair<std::int64_t, int> prime_power(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("prime_power: nonpositive argument");
    if (n == 1) return {1, 0};
    std::int64_t p = 2;
    while (p * p <= n && n % p != 0) ++p;
    if (n % p != 0) p = n;
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    if (n != 1) throw std::invalid_argument("prime_power: not a prime power");
    return {p, e};
}

} // namespace nilzeta
