#pragma once

// The Pfaffian quadric y1 y6 - y2 y5 + y3 y4 = 0 in P^5 over small prime
// fields, its linear subspaces, and brute-force flag counting.

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "nilzeta/combinat.hpp"
#include "nilzeta/intlinalg.hpp"

namespace nilzeta {

class PrimeField {
public:
    explicit PrimeField(int q);
    int q() const { return q_; }
    int add(int a, int b) const { return (a + b) % q_; }
    int sub(int a, int b) const { return (a - b + q_) % q_; }
    int mul(int a, int b) const { return (a * b) % q_; }
    int inv(int a) const { return inv_[a]; }
    int reduce(std::int64_t a) const { return static_cast<int>(((a % q_) + q_) % q_); }

private:
    int q_;
    std::vector<int> inv_;
};

template <typename S>
S pfaffian(const std::array<S, 6> &y) {
    return y[0] * y[5] - y[1] * y[4] + y[2] * y[3];
}

// Polar form of the Pfaffian: B(u, v) = Pf(u + v) - Pf(u) - Pf(v).
template <typename S>
S pfaffian_polar(const std::array<S, 6> &u, const std::array<S, 6> &v) {
    return u[0] * v[5] + u[5] * v[0] - u[1] * v[4] - u[4] * v[1] + u[2] * v[3] + u[3] * v[2];
}

// M(y)_{ij} = y_{idx(i,j)} for i < j, with (1,2),(1,3),(1,4),(2,3),(2,4),(3,4)
// mapped to y1..y6.
template <typename S>
Eigen::Matrix<S, 4, 4> relation_matrix(const std::array<S, 6> &y) {
    Eigen::Matrix<S, 4, 4> M;
    M << S(0), y[0], y[1], y[2],
        -y[0], S(0), y[3], y[4],
        -y[1], -y[3], S(0), y[5],
        -y[2], -y[4], -y[5], S(0);
    return M;
}

// Index of y_{ij} (0-based i < j < d) in the lexicographic pair order.
int pair_index(int i, int j, int d);

using FqVector = std::vector<int>;

// A linear subspace of F_q^n stored by its reduced row echelon basis. The
// projective dimension is rows.size() - 1.
struct ProjSubspace {
    int q = 2;
    int n = 0;
    std::vector<FqVector> rows;

    int proj_dim() const { return static_cast<int>(rows.size()) - 1; }
    // All nonzero vectors of the span, in odometer order of the coefficients.
    std::vector<FqVector> span_vectors() const;
    friend auto operator<=>(const ProjSubspace &, const ProjSubspace &) = default;
};

int rank_mod(std::vector<FqVector> rows, const PrimeField &F);
std::vector<FqVector> rref_mod(std::vector<FqVector> rows, const PrimeField &F);
int intersection_dim(const ProjSubspace &a, const ProjSubspace &b);
bool contained_in(const ProjSubspace &a, const ProjSubspace &b);

// Every k-dimensional linear subspace of F_q^n, sorted canonically.
std::vector<ProjSubspace> enumerate_subspaces(int q, int n, int k, double budget = kDefaultBudget);
// Projective subspaces of dimension dim (0, 1, 2) of P^5 inside the quadric.
std::vector<ProjSubspace> enumerate_quadric(int q, int dim, double budget = kDefaultBudget);

struct Rulings {
    std::vector<ProjSubspace> a;
    std::vector<ProjSubspace> b;
};
// Throws std::logic_error if the same-class relation is not a two-class
// equivalence.
Rulings classify_rulings(const std::vector<ProjSubspace> &planes);

int stacked_rank(const std::vector<FqVector> &vectors, int q);

std::int64_t count_flags_brute(int q, const FlagType &ft, double budget = kDefaultBudget);

} // namespace nilzeta
