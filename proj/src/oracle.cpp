#include "nilzeta/oracle.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "nilzeta/geometry.hpp"

namespace nilzeta {

std::vector<std::int64_t> LieRingSpec::bracket(int i, int j) const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(dprime));
    for (int a = 0; a < dprime; ++a) out[a] = bracket_map(j * dprime + a, i);
    return out;
}

LieRingSpec free_class_two(int d, const std::string &name) {
    if (d < 2) throw std::invalid_argument("free_class_two: need d >= 2");
    LieRingSpec s;
    s.name = name;
    s.d = d;
    s.dprime = d * (d - 1) / 2;
    s.bracket_map = IntMatrix<std::int64_t>::Zero(d * s.dprime, d);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) {
            if (i == k) continue;
            s.bracket_map(k * s.dprime + pair_index(i, k, d), i) = i < k ? 1 : -1;
        }
    return s;
}

LieRingSpec lie_ring(Group g) {
    GroupSpec gs = group_spec(g);
    return free_class_two(gs.d, gs.name);
}

int x_index(const LieRingSpec &spec, const CentreHNF &L, int q) {
    if (L.dim() != spec.dprime) throw std::invalid_argument("x_index: lattice lives in the wrong rank");
    std::int64_t idx = L.index();
    if (idx != 1 && prime_power(idx).first != q) throw std::invalid_argument("x_index: index is not a power of q");
    return kernel_index(spec.bracket_map, L, spec.d);
}

CenterLattice center_lattice(const LieRingSpec &spec, const CentreHNF &L, int q) {
    CenterLattice c{L, 0, 0};
    std::int64_t idx = L.index();
    while (idx > 1) {
        idx /= q;
        ++c.w;
    }
    c.wprime = c.w + x_index(spec, L, q);
    return c;
}

namespace {

BigInt at_q(const LaurentPoly &f, int q) {
    BigRat v = f.at(BigInt(q));
    if (v.get_den() != 1) throw std::logic_error("expected an integer value");
    return v.get_num();
}

BigInt bigpow(int q, int e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
    return r;
}

void check_prime(int q) {
    if (q < 2 || prime_power(q).first != q || prime_power(q).second != 1)
        throw std::invalid_argument("expected a prime, got " + std::to_string(q));
}

// Runs fn(worker, exps) over the diagonal compositions of every k <= n,
// round-robin across workers; rethrows the first worker exception.
template <typename Fn>
void partitioned(int d, int n, int threads, Fn &&fn) {
    std::vector<std::pair<int, std::vector<int>>> work;
    for (int k = 0; k <= n; ++k)
        for (auto &e : diagonal_compositions(d, k)) work.emplace_back(k, std::move(e));
    threads = std::max(1, threads);
    if (threads == 1) {
        for (const auto &[k, e] : work) fn(0, k, e);
        return;
    }
    std::exception_ptr err;
    std::mutex m;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = static_cast<std::size_t>(t); i < work.size(); i += static_cast<std::size_t>(threads))
                    fn(t, work[i].first, work[i].second);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m);
                if (!err) err = std::current_exception();
            }
        });
    for (auto &th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace

CountResult count_normal_sublattices_upto(const LieRingSpec &spec, int q, int n, const OracleOptions &opt) {
    check_prime(q);
    if (n < 0) throw std::invalid_argument("count_normal_sublattices: n must be nonnegative");
    double est = std::pow(double(q), double((spec.dprime - 1) * n));
    if (est > opt.budget)
        throw BudgetExceeded("count_normal_sublattices(" + spec.name + ", q=" + std::to_string(q) +
                                 ", n=" + std::to_string(n) + ")",
                             est, opt.budget);

    const int threads = std::max(1, opt.threads);
    // hist[worker][k][w'] for w' <= n
    std::vector<std::vector<std::vector<std::int64_t>>> hist(
        static_cast<std::size_t>(threads),
        std::vector<std::vector<std::int64_t>>(static_cast<std::size_t>(n) + 1,
                                               std::vector<std::int64_t>(static_cast<std::size_t>(n) + 1, 0)));
    std::vector<std::int64_t> visited(static_cast<std::size_t>(threads), 0);
    std::vector<char> bound_ok(static_cast<std::size_t>(threads), 1);

    partitioned(spec.dprime, n, threads, [&](int t, int k, const std::vector<int> &exps) {
        auto &h = hist[t][k];
        for_each_hnf_with_diagonal<10>(q, exps, [&](const CentreHNF &L) {
            const int x = k == 0 ? 0 : kernel_index(spec.bracket_map, L, spec.d);
            ++visited[t];
            if (x < 0 || x > spec.d * k) bound_ok[t] = 0;
            if (k + x <= n) ++h[k + x];
        });
    });

    std::vector<BigInt> sc(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) sc[j] = at_q(sublattice_count(spec.d, j), q);

    CountResult res;
    res.counts.assign(static_cast<std::size_t>(n) + 1, BigInt(0));
    for (int t = 0; t < threads; ++t) {
        res.lattices_visited += visited[t];
        res.weight_bound_ok = res.weight_bound_ok && bound_ok[t];
    }
    for (int k = 0; k <= n; ++k) {
        const BigInt scale = bigpow(q, spec.d * k);
        for (int wp = k; wp <= n; ++wp) {
            std::int64_t c = 0;
            for (int t = 0; t < threads; ++t) c += hist[t][k][wp];
            if (c == 0) continue;
            for (int m = wp; m <= n; ++m) res.counts[m] += BigInt(static_cast<long>(c)) * scale * sc[m - wp];
        }
    }
    return res;
}

BigInt count_normal_sublattices(const LieRingSpec &spec, int q, int n, const OracleOptions &opt) {
    return count_normal_sublattices_upto(spec, q, n, opt).counts.back();
}

namespace {

using FullHNF = SmallHNF<10>;

// Coordinates of the full ring: y_1..y_{d'} first, then x_1..x_d.
std::vector<std::int64_t> full_bracket(const LieRingSpec &spec, const IntVector<std::int64_t> &u,
                                       const IntVector<std::int64_t> &v) {
    const int dp = spec.dprime, d = spec.d;
    std::vector<std::int64_t> out(static_cast<std::size_t>(dp + d), 0);
    for (int i = 0; i < d; ++i) {
        if (u(dp + i) == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (v(dp + j) == 0 || i == j) continue;
            auto b = spec.bracket(i, j);
            for (int a = 0; a < dp; ++a) out[a] += u(dp + i) * v(dp + j) * b[a];
        }
    }
    return out;
}

bool closed_under_bracket(const LieRingSpec &spec, const FullHNF &M) {
    const int D = M.dim();
    IntVector<std::int64_t> e = IntVector<std::int64_t>::Zero(D);
    for (int g = 0; g < D; ++g) {
        e.setZero();
        e(g) = 1;
        for (int c = 0; c < D; ++c) {
            IntVector<std::int64_t> col = M.basis.col(c);
            auto br = full_bracket(spec, e, col);
            Eigen::Map<IntVector<std::int64_t>> v(br.data(), D);
            if (!M.contains(v)) return false;
        }
    }
    return true;
}

} // namespace

std::vector<BigInt> direct_ideal_count_upto(const LieRingSpec &spec, int q, int n, const OracleOptions &opt) {
    check_prime(q);
    if (n < 0 || n > 2) throw std::invalid_argument("direct_ideal_count: n must lie in 0..2");
    const int dp = spec.dprime, d = spec.d, D = dp + d;
    if (D > 10) throw std::invalid_argument("direct_ideal_count: ring rank exceeds 10");
    // With central coordinates first, the leading d' x d' block of an HNF is
    // M intersected with the centre and the trailing block its image in the
    // abelianisation; closure only involves those two blocks, so pairs are
    // pruned before their tails are enumerated.
    double est = 0;
    for (int k = 0; k <= n; ++k)
        for (int m = 0; m <= k; ++m)
            est += enumeration_estimate(dp, q, m) * enumeration_estimate(d, q, k - m);
    if (est > opt.budget)
        throw BudgetExceeded("direct_ideal_count(" + spec.name + ", q=" + std::to_string(q) + ", n=" + std::to_string(n) +
                                 ")",
                             est, opt.budget);

    std::vector<BigInt> counts(static_cast<std::size_t>(n) + 1, BigInt(0));
    for (int k = 0; k <= n; ++k) {
        std::int64_t total = 0;
        for (int m = 0; m <= k; ++m) {
            std::vector<CentreHNF> centres;
            enumerate_sublattices<10>(dp, q, m, [&](const CentreHNF &L) { centres.push_back(L); }, opt.budget);
            enumerate_sublattices<10>(
                d, q, k - m,
                [&](const CentreHNF &G) {
                    for (const auto &L : centres) {
                        bool ok = true;
                        for (int c = 0; c < d && ok; ++c)
                            for (int j = 0; j < d && ok; ++j) {
                                std::vector<std::int64_t> y(static_cast<std::size_t>(dp), 0);
                                for (int i = 0; i < d; ++i) {
                                    if (G.basis(i, c) == 0 || i == j) continue;
                                    auto b = spec.bracket(i, j);
                                    for (int a = 0; a < dp; ++a) y[a] += G.basis(i, c) * b[a];
                                }
                                ok = L.contains(Eigen::Map<IntVector<std::int64_t>>(y.data(), dp));
                            }
                        if (!ok) continue;
                        // Every tail: rows of the central block over the x columns.
                        FullHNF M;
                        M.basis = IntMatrix<std::int64_t, 10>::Zero(D, D);
                        M.basis.topLeftCorner(dp, dp) = L.basis;
                        M.basis.bottomRightCorner(d, d) = G.basis;
                        std::vector<std::pair<int, int>> slots;
                        for (int i = 0; i < dp; ++i)
                            if (L.basis(i, i) > 1)
                                for (int j = dp; j < D; ++j) slots.emplace_back(i, j);
                        for (;;) {
                            if (closed_under_bracket(spec, M)) ++total;
                            int s = static_cast<int>(slots.size()) - 1;
                            while (s >= 0) {
                                auto &v = M.basis(slots[s].first, slots[s].second);
                                if (++v < M.basis(slots[s].first, slots[s].first)) break;
                                v = 0;
                                --s;
                            }
                            if (s < 0) break;
                        }
                    }
                },
                opt.budget);
        }
        counts[k] = BigInt(static_cast<long>(total));
    }
    return counts;
}

BigInt direct_ideal_count(const LieRingSpec &spec, int q, int n, const OracleOptions &opt) {
    return direct_ideal_count_upto(spec, q, n, opt).back();
}

MultiplicityReport verify_multiplicity(int q, int bound, const OracleOptions &opt) {
    check_prime(q);
    if (bound < 0) throw std::invalid_argument("verify_multiplicity: bound must be nonnegative");
    double est = enumeration_estimate(6, q, bound);
    if (est > opt.budget)
        throw BudgetExceeded("verify_multiplicity(q=" + std::to_string(q) + ", bound=" + std::to_string(bound) + ")",
                             est, opt.budget);
    MultiplicityReport rep;
    rep.q = q;
    rep.bound = bound;
    for (int k = 0; k <= bound; ++k) {
        std::map<std::pair<LatticeType, int>, std::int64_t> hist;
        enumerate_sublattices<10>(
            6, q, k,
            [&](const CentreHNF &L) {
                DivisorType t = divisor_type(L, q);
                ++hist[{t.type, t.scalar}];
            },
            opt.budget);
        // Every (type, scalar) with i r_i summing to k - 6 s is expected,
        // including those the enumeration missed.
        for (int s = 0; 6 * s <= k; ++s) {
            const int rest = k - 6 * s;
            std::function<void(int, int, LatticeType &)> walk = [&](int i, int left, LatticeType &t) {
                if (left == 0) {
                    hist.try_emplace({t, s}, 0);
                    return;
                }
                if (i > 5) return;
                walk(i + 1, left, t);
                for (int r = 1; i * r <= left; ++r) {
                    t.r[i] = r;
                    walk(i + 1, left - i * r, t);
                }
                t.r.erase(i);
            };
            LatticeType t;
            walk(1, rest, t);
        }
        for (const auto &[key, obs] : hist) {
            MultiplicityRow row;
            row.k = k;
            row.type = key.first;
            row.scalar = key.second;
            row.observed = obs;
            row.predicted = at_q(lattice_type_count(key.first), q);
            if (row.predicted != BigInt(static_cast<long>(obs))) ++rep.mismatches;
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

} // namespace nilzeta
