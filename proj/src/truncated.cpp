#include "nilzeta/zetacore.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nilzeta {

namespace {

// Sparse polynomial in p with machine coefficients: exponent -> coefficient.
using SmallPoly = std::vector<std::pair<int, long long>>;

SmallPoly mul(const SmallPoly &a, const SmallPoly &b) {
    SmallPoly out;
    for (const auto &[ea, ca] : a)
        for (const auto &[eb, cb] : b) out.emplace_back(ea + eb, ca * cb);
    return out;
}

// mu(M, b) for the single column-1 invariant.
SmallPoly mu_weight(int M, int v) {
    if (v == M) return {{0, 1}};
    return {{M - v, 1}, {M - v - 1, -1}};
}

// Number of k-tuples in (pZ/p^M)^k whose minimal valuation (capped at M) is v.
SmallPoly min_weight(int k, int M, int v) {
    if (v == M) return {{0, 1}};
    return {{k * (M - v), 1}, {k * (M - v - 1), -1}};
}

struct Engine {
    LatticeCase c;
    int N;
    std::vector<int> I;
    std::map<int, int> r;
    int dimF = 0;
    std::vector<std::map<int, long long>> acc;

    bool starred(int i) const { return std::find(c.starred.begin(), c.starred.end(), i) != c.starred.end(); }

    // Smallest T-order any choice of invariants can give for the r chosen so far.
    int lower_bound() const {
        int lb = 0;
        for (const auto &[i, ri] : r) {
            lb += (4 + i) * ri;
            if (starred(i)) lb -= ri;
            if (i == 1 && starred(1)) lb -= ri;
        }
        return lb;
    }

    void run() {
        I = c.all();
        dimF = flag_dim(FlagType{5, I});
        acc.assign(static_cast<std::size_t>(N) + 1, {});
        choose(0);
    }

    void choose(std::size_t pos) {
        if (pos == I.size()) {
            emit();
            return;
        }
        for (int ri = 1;; ++ri) {
            r[I[pos]] = ri;
            // lower_bound counts only the indices fixed so far; the rest add
            // at least their r_i = 1 contribution.
            int lb = lower_bound();
            for (std::size_t k = pos + 1; k < I.size(); ++k) {
                int i = I[k];
                lb += 4 + i - (starred(i) ? 1 : 0) - ((i == 1 && starred(1)) ? 1 : 0);
            }
            if (lb > N) break;
            choose(pos + 1);
        }
        r.erase(I[pos]);
    }

    int modulus(int j) const {
        int m = 0;
        for (const auto &[i, ri] : r)
            if (i >= j) m += ri;
        return m;
    }

    int offset(int j) const {
        int o = 0;
        for (const auto &[i, ri] : r)
            if (i < j && starred(i)) o += ri;
        return o;
    }

    void emit() {
        const int ms = c.max_star();
        int w = 0, wgen = 0, vol = 0, rs = 0;
        for (const auto &[i, ri] : r) {
            w += i * ri;
            wgen += (4 + i) * ri;
            vol += (6 - i) * i * ri;
            if (starred(i)) rs += ri;
        }
        int base = 4 * w + vol - dimF;
        for (int j = 1; j <= ms; ++j) base -= j * (modulus(j) - 1);
        if (ms == 0) {
            add(wgen, {{base, 1}});
            return;
        }
        const int r1 = starred(1) ? r.at(1) : 0;
        const int M1 = modulus(1);
        const int M2 = ms >= 2 ? modulus(2) : 0, o2 = offset(2);
        const int M3 = ms >= 3 ? modulus(3) : 0, o3 = offset(3);
        for (int b1 = 1; b1 <= M1; ++b1) {
            SmallPoly w1 = mu_weight(M1, b1);
            int corr1 = starred(1) ? std::min(r1, b1) : 0;
            int m1 = std::min(rs, b1);
            for (int c2 = 1; c2 <= std::max(M2, 1); ++c2) {
                SmallPoly w2 = ms >= 2 ? mul(w1, min_weight(2, M2, c2)) : w1;
                int m2 = ms >= 2 ? std::min(m1, c2 + o2) : m1;
                for (int c3 = 1; c3 <= std::max(M3, 1); ++c3) {
                    SmallPoly w3 = ms >= 3 ? mul(w2, min_weight(3, M3, c3)) : w2;
                    int m3 = ms >= 3 ? std::min(m2, c3 + o3) : m2;
                    int wprime = wgen - corr1 - m3;
                    if (wprime <= N) {
                        for (auto &t : w3) t.first += base;
                        add(wprime, w3);
                    }
                }
            }
        }
    }

    void add(int t, const SmallPoly &poly) {
        if (t < 0) throw std::logic_error("truncated_A: negative weight");
        if (t > N) return;
        for (const auto &[e, k] : poly) acc[t][e] += k;
    }
};

} // namespace

std::vector<LaurentPoly> truncated_A(const LatticeCase &c, int N) {
    c.validate();
    if (N < 0) throw std::invalid_argument("truncated_A: N must be nonnegative");
    Engine e{c, N, {}, {}, 0, {}};
    e.run();
    std::vector<LaurentPoly> out(static_cast<std::size_t>(N) + 1);
    for (int t = 0; t <= N; ++t)
        for (const auto &[ep, k] : e.acc[t])
            if (k != 0) out[t].add_term(ep, 0, BigInt(static_cast<long>(k)));
    return out;
}

} // namespace nilzeta
