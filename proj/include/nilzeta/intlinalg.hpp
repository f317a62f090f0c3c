#pragma once

// Integer normal forms and sublattice enumeration, templated on the scalar.
//
// HNF convention: a full-rank sublattice L of Z^d is the column span of an
// upper-triangular H with positive diagonal, and every entry to the right of
// a diagonal entry reduced into [0, H(i,i)).

#include <algorithm>
#include <cstdint>
#include <type_traits>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <gmpxx.h>

#include "nilzeta/combinat.hpp"

namespace Eigen {
template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
    typedef mpz_class Real;
    typedef mpz_class NonInteger;
    typedef mpz_class Nested;
    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};
} // namespace Eigen

namespace nilzeta {

template <typename Scalar, int MaxDim = Eigen::Dynamic>
using IntMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, MaxDim, MaxDim>;

template <typename Scalar>
using IntVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string &what, double needed, double budget)
        : std::runtime_error(what + ": needs about " + std::to_string(static_cast<long long>(needed)) +
                             " steps, budget is " + std::to_string(static_cast<long long>(budget))),
          needed_(needed), budget_(budget) {}
    double needed() const { return needed_; }
    double budget() const { return budget_; }

private:
    double needed_, budget_;
};

inline constexpr double kDefaultBudget = 2e7;

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline mpz_class floor_div(const mpz_class &a, const mpz_class &b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
inline std::int64_t mod_floor(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }
inline mpz_class mod_floor(const mpz_class &a, const mpz_class &b) { return a - floor_div(a, b) * b; }
template <typename S>
S abs_val(const S &a) {
    return a < 0 ? S(-a) : a;
}
inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}
inline bool is_zero(const std::int64_t &a) { return a == 0; }
inline bool is_zero(const mpz_class &a) { return sgn(a) == 0; }

} // namespace detail

template <typename Scalar, int MaxDim = Eigen::Dynamic>
struct SublatticeHNF {
    IntMatrix<Scalar, MaxDim> basis;

    int dim() const { return static_cast<int>(basis.rows()); }
    Scalar index() const {
        Scalar r = 1;
        for (int i = 0; i < dim(); ++i) r *= basis(i, i);
        return r;
    }
    template <typename Vec>
    bool contains(const Vec &v) const {
        // Back substitution; v in L iff the solution is integral.
        IntVector<Scalar> w(dim());
        for (int i = 0; i < dim(); ++i) w(i) = v(i);
        for (int i = dim() - 1; i >= 0; --i) {
            if (!detail::is_zero(detail::mod_floor(Scalar(w(i)), Scalar(basis(i, i))))) return false;
            Scalar c = w(i) / basis(i, i);
            for (int k = 0; k <= i; ++k) w(k) -= c * basis(k, i);
        }
        return true;
    }
    friend bool operator==(const SublatticeHNF &a, const SublatticeHNF &b) { return a.basis == b.basis; }
};

// Column HNF of the lattice spanned by the columns of M. Throws
// std::invalid_argument unless the columns span a full-rank lattice.
template <typename Derived>
SublatticeHNF<typename Derived::Scalar> hnf(const Eigen::MatrixBase<Derived> &M) {
    using S = typename Derived::Scalar;
    const int d = static_cast<int>(M.rows());
    const int n = static_cast<int>(M.cols());
    IntMatrix<S> A = M;
    std::vector<int> active(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) active[j] = j;
    IntMatrix<S> H = IntMatrix<S>::Zero(d, d);
    for (int i = d - 1; i >= 0; --i) {
        // Euclid across the active columns on row i.
        for (;;) {
            int best = -1;
            for (int c : active)
                if (!detail::is_zero(A(i, c)) &&
                    (best < 0 || detail::abs_val<S>(A(i, c)) < detail::abs_val<S>(A(i, best))))
                    best = c;
            if (best < 0) throw std::invalid_argument("hnf: generators do not span a full-rank lattice");
            bool done = true;
            for (int c : active) {
                if (c == best || detail::is_zero(A(i, c))) continue;
                S f = detail::floor_div(S(A(i, c)), S(A(i, best)));
                for (int k = 0; k <= i; ++k) A(k, c) -= f * A(k, best);
                if (!detail::is_zero(A(i, c))) done = false;
            }
            if (done) {
                if (A(i, best) < 0)
                    for (int k = 0; k <= i; ++k) A(k, best) = -A(k, best);
                for (int k = 0; k <= i; ++k) H(k, i) = A(k, best);
                active.erase(std::find(active.begin(), active.end(), best));
                break;
            }
        }
    }
    for (int j = 0; j < d; ++j)
        for (int i = j - 1; i >= 0; --i) {
            S f = detail::floor_div(S(H(i, j)), S(H(i, i)));
            if (!detail::is_zero(f))
                for (int k = 0; k <= i; ++k) H(k, j) -= f * H(k, i);
        }
    return SublatticeHNF<S>{H};
}

// Smith normal form: same shape as M, nonnegative diagonal d_1 | d_2 | ...
template <typename Derived>
IntMatrix<typename Derived::Scalar> snf(const Eigen::MatrixBase<Derived> &M) {
    using S = typename Derived::Scalar;
    IntMatrix<S> A = M;
    const int rows = static_cast<int>(A.rows()), cols = static_cast<int>(A.cols());
    const int t_max = std::min(rows, cols);
    for (int t = 0; t < t_max; ++t) {
        for (;;) {
            int pr = -1, pc = -1;
            for (int j = t; j < cols; ++j)
                for (int i = t; i < rows; ++i)
                    if (!detail::is_zero(A(i, j)) &&
                        (pr < 0 || detail::abs_val<S>(A(i, j)) < detail::abs_val<S>(A(pr, pc)))) {
                        pr = i;
                        pc = j;
                    }
            if (pr < 0) return A;
            A.row(t).swap(A.row(pr));
            A.col(t).swap(A.col(pc));
            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (detail::is_zero(A(i, t))) continue;
                S f = detail::floor_div(S(A(i, t)), S(A(t, t)));
                for (int j = t; j < cols; ++j) A(i, j) -= f * A(t, j);
                if (!detail::is_zero(A(i, t))) clean = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (detail::is_zero(A(t, j))) continue;
                S f = detail::floor_div(S(A(t, j)), S(A(t, t)));
                for (int i = t; i < rows; ++i) A(i, j) -= f * A(i, t);
                if (!detail::is_zero(A(t, j))) clean = false;
            }
            if (!clean) continue;
            // Divisibility: fold a row whose entries the pivot does not divide.
            int bad = -1;
            for (int i = t + 1; i < rows && bad < 0; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (!detail::is_zero(detail::mod_floor(S(A(i, j)), S(A(t, t))))) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            for (int j = t; j < cols; ++j) A(t, j) += A(bad, j);
        }
        if (A(t, t) < 0) A(t, t) = -A(t, t);
    }
    return A;
}

// Exponent compositions (e_1..e_d) of k in lexicographic order; the diagonal
// of an HNF of index q^k is (q^{e_1}, ..., q^{e_d}).
std::vector<std::vector<int>> diagonal_compositions(int d, int k);

// Upper bound used for budgeting: q^{(d-1)k}.
double enumeration_estimate(int d, int q, int k);

template <int MaxDim = 10>
using SmallHNF = SublatticeHNF<std::int64_t, MaxDim>;

// Visits every HNF with the given diagonal exponents, in lexicographic order
// of the off-diagonal entries (row-major).
template <int MaxDim = 10, typename Fn>
void for_each_hnf_with_diagonal(int q, const std::vector<int> &exps, Fn &&fn) {
    const int d = static_cast<int>(exps.size());
    SmallHNF<MaxDim> L;
    L.basis = IntMatrix<std::int64_t, MaxDim>::Zero(d, d);
    struct Slot {
        int i, j;
        std::int64_t limit;
    };
    std::vector<Slot> slots;
    for (int i = 0; i < d; ++i) {
        L.basis(i, i) = detail::ipow(q, exps[i]);
        for (int j = i + 1; j < d; ++j)
            if (L.basis(i, i) > 1) slots.push_back({i, j, L.basis(i, i)});
    }
    // Odometer over the slots; the last slot varies fastest.
    const int ns = static_cast<int>(slots.size());
    for (;;) {
        fn(static_cast<const SmallHNF<MaxDim> &>(L));
        int s = ns - 1;
        while (s >= 0) {
            auto &v = L.basis(slots[s].i, slots[s].j);
            if (++v < slots[s].limit) break;
            v = 0;
            --s;
        }
        if (s < 0) return;
    }
}

// Streams every sublattice of Z^d of index q^k exactly once, in canonical
// order (diagonal compositions lexicographically, then off-diagonals).
template <int MaxDim = 10, typename Fn>
void enumerate_sublattices(int d, int q, int k, Fn &&fn, double budget = kDefaultBudget) {
    double est = enumeration_estimate(d, q, k);
    if (est > budget)
        throw BudgetExceeded("enumerate_sublattices(d=" + std::to_string(d) + ", q=" + std::to_string(q) +
                                 ", k=" + std::to_string(k) + ")",
                             est, budget);
    for (const auto &exps : diagonal_compositions(d, k)) for_each_hnf_with_diagonal<MaxDim>(q, exps, fn);
}

// Number of HNFs with the given diagonal: prod_i q^{e_i (d-1-i)}.
std::int64_t hnf_count_with_diagonal(int q, const std::vector<int> &exps);

// Smallest prime factor p and exponent e with n = p^e; throws if n is not a
// prime power. n = 1 gives (1, 0).
std::pair<std::int64_t, int> prime_power(std::int64_t n);

struct DivisorType {
    LatticeType type;
    int scalar = 0;
};

template <typename Scalar, int MaxDim>
DivisorType divisor_type(const SublatticeHNF<Scalar, MaxDim> &L, std::int64_t q) {
    IntMatrix<Scalar> S = snf(L.basis);
    const int d = L.dim();
    std::vector<int> e(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        Scalar x = S(i, i);
        int v = 0;
        while (x != 1 && detail::is_zero(detail::mod_floor(x, Scalar(q)))) {
            x /= Scalar(q);
            ++v;
        }
        if (x != 1) throw std::invalid_argument("divisor_type: index is not a power of q");
        e[i] = v;
    }
    DivisorType out;
    out.scalar = e[0];
    for (int i = 1; i < d; ++i) {
        int r = e[d - i] - e[d - i - 1];
        if (r > 0) out.type.r[i] = r;
    }
    return out;
}

namespace detail {

template <typename S>
int valuation(S x, const S &q, int cap) {
    if (is_zero(x)) return cap;
    int v = 0;
    while (v < cap && is_zero(mod_floor(x, q))) {
        x /= q;
        ++v;
    }
    return v;
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = mod_floor(a, m);
    while (a1 != 0) {
        std::int64_t t = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - t * a1);
        std::tie(x, x1) = std::make_pair(x1, x - t * x1);
    }
    return mod_floor(x, m);
}
inline mpz_class inverse_mod(const mpz_class &a, const mpz_class &m) {
    mpz_class r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// log_q of the index of {g : R g = 0 mod q^E} for R with entries in [0, q^E).
// R is destroyed.
template <typename Mat>
int congruence_kernel_exponent(Mat &R, const typename Mat::Scalar &q, int E) {
    using S = typename Mat::Scalar;
    S Q = 1;
    for (int i = 0; i < E; ++i) Q *= q;
    const int rows = static_cast<int>(R.rows()), cols = static_cast<int>(R.cols());
    int total = 0;
    int t = 0;
    for (; t < std::min(rows, cols); ++t) {
        int pr = -1, pc = -1, pv = E;
        for (int j = t; j < cols && pv > 0; ++j)
            for (int i = t; i < rows; ++i) {
                if (is_zero(R(i, j))) continue;
                int v = valuation<S>(R(i, j), q, E);
                if (v < pv) {
                    pv = v;
                    pr = i;
                    pc = j;
                    if (v == 0) break;
                }
            }
        if (pr < 0) break;
        total += E - pv;
        R.row(t).swap(R.row(pr));
        R.col(t).swap(R.col(pc));
        S qv = 1;
        for (int i = 0; i < pv; ++i) qv *= q;
        S u = inverse_mod(S(R(t, t) / qv), Q);
        // Every entry in row/column t has valuation >= pv, so the pivot
        // clears them over Z/q^E.
        for (int i = t + 1; i < rows; ++i) {
            if (is_zero(R(i, t))) continue;
            S f = mod_floor(S(S(R(i, t) / qv) * u), Q);
            for (int j = t; j < cols; ++j) R(i, j) = mod_floor(S(R(i, j) - f * R(t, j)), Q);
        }
        // Column operations do not change later rows' pivots beyond row t,
        // which is discarded; skip them.
    }
    return total;
}

} // namespace detail

// log_q |Z^{d_src} : X| for X = {g : A g in L^{blocks}}, where A has
// blocks * dim(L) rows and d_src columns.
template <typename DerivedA, typename Scalar, int MaxDim>
int kernel_index(const Eigen::MatrixBase<DerivedA> &A, const SublatticeHNF<Scalar, MaxDim> &L, int d_src) {
    const int d = L.dim();
    if (A.cols() != d_src || A.rows() % d != 0) throw std::invalid_argument("kernel_index: shape mismatch");
    const int blocks = static_cast<int>(A.rows()) / d;
    Scalar index = L.index();
    if (index == 1) return 0;
    std::pair<std::int64_t, int> qe;
    if constexpr (std::is_same_v<Scalar, std::int64_t>)
        qe = prime_power(index);
    else
        qe = prime_power(index.get_si());
    const Scalar q = qe.first;
    const int E = qe.second;
    Scalar Q = 1;
    for (int i = 0; i < E; ++i) Q *= q;

    // K = Q * H^{-1}, integral because Q Z^d lies in L.
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, MaxDim, MaxDim> K(d, d);
    for (int c = 0; c < d; ++c)
        for (int i = d - 1; i >= 0; --i) {
            Scalar s = (i == c) ? Q : Scalar(0);
            for (int k = i + 1; k < d; ++k) s -= L.basis(i, k) * K(k, c);
            K(i, c) = s / L.basis(i, i);
        }

    auto run = [&](auto &R) {
        for (int b = 0; b < blocks; ++b)
            for (int j = 0; j < d; ++j)
                for (int c = 0; c < d_src; ++c) {
                    Scalar s = 0;
                    for (int k = 0; k < d; ++k) s += K(j, k) * Scalar(A(b * d + k, c));
                    R(b * d + j, c) = detail::mod_floor(s, Q);
                }
        return detail::congruence_kernel_exponent(R, q, E);
    };
    constexpr int MaxRows = 48, MaxCols = 12;
    if (blocks * d <= MaxRows && d_src <= MaxCols) {
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor, MaxRows, MaxCols> R(blocks * d, d_src);
        return run(R);
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> R(blocks * d, d_src);
    return run(R);
}

} // namespace nilzeta
