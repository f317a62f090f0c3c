#pragma once

// Structured local normal zeta functions of F_{2,2}, F_{2,3}, F_{2,4}.

#include <string>
#include <vector>

#include "nilzeta/combinat.hpp"
#include "nilzeta/exactalg.hpp"

namespace nilzeta {

enum class Group { F22, F23, F24 };

struct GroupSpec {
    Group group;
    std::string name;
    int d;      // rank of the abelianisation
    int dprime; // rank of the centre
    int hirsch() const { return d + dprime; }
};

GroupSpec group_spec(Group g);
// Accepts "F22", "F23", "F24"; throws std::invalid_argument otherwise.
GroupSpec parse_group(const std::string &name);

// The monomial p^a T^b.
struct NumericalDatum {
    int a = 0;
    int b = 1;
    LaurentPoly monomial() const { return LaurentPoly::monomial(1, a, b); }
    // U / (1 - U)
    RatFun pole() const { return RatFun(monomial(), {GeomFactor{a, b}}); }
};

// F_{2,4} data: X_1..X_5 and Y_1..Y_3.
NumericalDatum X(int i);
NumericalDatum Y(int i);

struct FanoData {
    int i;
    int d; // dimension of the Fano variety
    int c; // its codimension in the Grassmannian
    int n; // Grassmannian dimension, c + d
    int t;
    LaurentPoly count_poly;
};
FanoData fano(int i);

RatFun zeta_Zd(int d);
// sum over I in {1..m} of b_I(p^{-1}) prod_{i in I} U_i/(1-U_i), flags in P^m;
// vars[k] belongs to flag index k+1.
RatFun igusa(int m, const std::vector<NumericalDatum> &vars);
RatFun exceptional(const FanoData &fd);
// W_0 = I_5(X_1..X_5); W_i = I_{5-i}(X_{i+1..5}) E_i I_{i-1}(Y_1..Y_{i-1}).
RatFun w_factor(int i);
// W_0 + sum n_i(p) W_i
RatFun generating_A();
RatFun zeta_local(Group g);

// The explicit six-term fraction for F_{2,3}, written out independently.
RatFun f23_explicit();

struct FunctionalEquation {
    bool found = false;
    int sign = 0;
    int p_exp = 0;
    int t_exp = 0;
    bool verified = false;
};
// Finds sign * p^a T^b with rf_invert(x) == sign p^a T^b x.
FunctionalEquation inversion_monomial(const RatFun &x);
FunctionalEquation check_functional_equation(Group g);

struct SeriesCoeffs {
    GroupSpec group;
    int N;
    std::vector<LaurentPoly> coeffs;
};
SeriesCoeffs series_coeffs(Group g, int N);

// max over 1 <= n <= N of (deg_p a_{p^n} + 1) / n
BigRat abscissa_estimate(Group g, int N);

// Index sets of the decomposition: starred subset of {1,2,3} with every plain
// index above the largest starred one.
struct LatticeCase {
    std::vector<int> starred;
    std::vector<int> plain;

    void validate() const;
    std::vector<int> all() const; // starred and plain indices, sorted
    int max_star() const { return starred.empty() ? 0 : starred.back(); }
    std::string to_string() const;
    static LatticeCase parse(const std::string &s);
    friend auto operator<=>(const LatticeCase &, const LatticeCase &) = default;
};

// The 32 plain and 48 starred index sets of the decomposition.
std::vector<LatticeCase> decomposition_family();

LaurentPoly coeff_c(const LatticeCase &c);

// A_I truncated at T^N, by direct summation over r-vectors and the valuation
// profile of the quadric invariants.
std::vector<LaurentPoly> truncated_A(const LatticeCase &c, int N);

// Series of x to order N; helper for comparisons.
std::vector<LaurentPoly> series_diff(const std::vector<LaurentPoly> &a, const std::vector<LaurentPoly> &b);

} // namespace nilzeta
