#pragma once

// Brute-force oracles: normal-subgroup counts through central lattices,
// direct ideal counting in the full Lie ring, weight-function and
// multiplicity checks.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nilzeta/intlinalg.hpp"
#include "nilzeta/zetacore.hpp"

namespace nilzeta {

// Class-two Lie ring on x_1..x_d with centre y_1..y_{d'}; [x_i, x_j] = y_{idx(i,j)}
// for i < j in lexicographic pair order.
struct LieRingSpec {
    std::string name;
    int d = 0;
    int dprime = 0;
    // Block k (rows k*d'..k*d'+d'-1) holds the coordinates of [x_i, x_k] in
    // column i.
    IntMatrix<std::int64_t> bracket_map;

    // [x_i, x_j] as a y-coordinate vector.
    std::vector<std::int64_t> bracket(int i, int j) const;
};

LieRingSpec free_class_two(int d, const std::string &name);
LieRingSpec lie_ring(Group g);

using CentreHNF = SmallHNF<10>;

// log_q |Z^d : X(L)|.
int x_index(const LieRingSpec &spec, const CentreHNF &L, int q);

struct CenterLattice {
    CentreHNF lattice;
    int w = 0;
    int wprime = 0;
};
CenterLattice center_lattice(const LieRingSpec &spec, const CentreHNF &L, int q);

struct OracleOptions {
    double budget = kDefaultBudget;
    int threads = 1;
};

struct CountResult {
    std::vector<BigInt> counts; // a_{q^0} .. a_{q^n}
    std::int64_t lattices_visited = 0;
    bool weight_bound_ok = true; // w <= w' <= (1 + d) w on every lattice
};

// Central-lattice route, all coefficients up to n at once.
CountResult count_normal_sublattices_upto(const LieRingSpec &spec, int q, int n, const OracleOptions &opt = {});
BigInt count_normal_sublattices(const LieRingSpec &spec, int q, int n, const OracleOptions &opt = {});

// Ideals of index q^k, k <= n <= 2, of the full Lie ring Z^{d'+d} by HNF
// enumeration with a bracket-closure check on every candidate.
std::vector<BigInt> direct_ideal_count_upto(const LieRingSpec &spec, int q, int n, const OracleOptions &opt = {});
BigInt direct_ideal_count(const LieRingSpec &spec, int q, int n, const OracleOptions &opt = {});

enum class WeightCase { Generic, Point, Line, PointLine, PlaneA, PlaneB, MixedR3 };

const std::vector<WeightCase> &all_weight_cases();
std::string to_string(WeightCase c);
WeightCase parse_weight_case(const std::string &s);
// Number of r entries the case takes.
int weight_case_arity(WeightCase c);

// A maximal lattice given by dual vectors: L = {v : <alpha_j, v> = 0 mod q^{m_j}}.
struct FlagLift {
    LatticeType type;
    std::vector<std::array<std::int64_t, 6>> alpha;
    std::vector<int> moduli;

    // Column HNF of L, via the unimodular completion of the alphas.
    CentreHNF lattice(int q) const;
};

struct WeightMismatch {
    std::vector<std::array<std::int64_t, 6>> alpha;
    int observed = 0;
    int predicted = 0;
};

struct WeightReport {
    WeightCase wcase;
    int q = 0;
    std::vector<int> r;
    bool exhaustive = true;
    std::int64_t tuples = 0;
    std::map<int, std::int64_t> histogram; // w' -> number of tuples
    std::vector<WeightMismatch> mismatches; // first few only
    std::int64_t mismatch_count = 0;
};

struct WeightOptions {
    std::int64_t max_exhaustive = 60000;
    std::int64_t samples = 20000;
    std::uint64_t seed = 0x5eed;
};

WeightReport verify_weight_lemma(WeightCase c, int q, const std::vector<int> &r, const WeightOptions &opt = {});

struct MultiplicityRow {
    int k = 0;
    LatticeType type;
    int scalar = 0;
    std::int64_t observed = 0;
    BigInt predicted;
};

struct MultiplicityReport {
    int q = 0;
    int bound = 0;
    std::vector<MultiplicityRow> rows;
    int mismatches = 0;
};

MultiplicityReport verify_multiplicity(int q, int bound, const OracleOptions &opt = {});

} // namespace nilzeta
