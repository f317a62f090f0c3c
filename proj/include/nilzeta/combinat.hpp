#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilzeta/exactalg.hpp"

namespace nilzeta {

// Flags in P^m, i.e. in an (m+1)-dimensional space; flag index i is a
// codimension-i subspace.
struct FlagType {
    int m = 1;
    std::vector<int> I;

    void validate() const;
};

// Elementary-divisor type of a maximal lattice: r[i] >= 1 for i in I.
struct LatticeType {
    std::map<int, int> r;

    std::vector<int> I() const;
    // sum of i * r_i
    int weight() const;
    std::string to_string() const;
    friend auto operator<=>(const LatticeType &, const LatticeType &) = default;
};

LaurentPoly gauss_binom(int n, int k);
LaurentPoly flag_count(const FlagType &ft);
int flag_dim(const FlagType &ft);
LaurentPoly mu(int a, int b);
LaurentPoly sublattice_count(int d, int k);
// Number of maximal lattices of the given type in Z^dim.
LaurentPoly lattice_type_count(const LatticeType &t, int dim = 6);

// Every subset of {1..m} in increasing order of bitmask.
std::vector<std::vector<int>> subsets(int m);

} // namespace nilzeta
