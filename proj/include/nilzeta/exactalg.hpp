#pragma once

// Exact Laurent polynomials in p and T = p^{-s}, and rational functions whose
// denominators are products of factors 1 - p^a T^b.

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nilzeta {

using BigInt = mpz_class;
using BigRat = mpq_class;

struct Exponent {
    int p = 0;
    int t = 0;
    friend auto operator<=>(const Exponent &, const Exponent &) = default;
};

class LaurentPoly {
public:
    using TermMap = std::map<Exponent, BigInt>;

    LaurentPoly() = default;
    LaurentPoly(long c);
    LaurentPoly(const BigInt &c);

    static LaurentPoly monomial(const BigInt &c, int ep, int et);
    // p^e and T^e.
    static LaurentPoly p(int e = 1) { return monomial(1, e, 0); }
    static LaurentPoly T(int e = 1) { return monomial(1, 0, e); }

    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    BigInt coeff(int ep, int et) const;

    // Adds c * p^ep T^et, dropping the term if it cancels.
    void add_term(int ep, int et, const BigInt &c);

    LaurentPoly &operator+=(const LaurentPoly &o);
    LaurentPoly &operator-=(const LaurentPoly &o);
    LaurentPoly &operator*=(const LaurentPoly &o);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b);
    friend LaurentPoly operator-(const LaurentPoly &a);
    friend bool operator==(const LaurentPoly &a, const LaurentPoly &b) { return a.terms_ == b.terms_; }

    // Degree data; all assume a nonzero polynomial.
    int min_t() const;
    int max_t() const;
    int min_p() const;
    int max_p() const;

    // p -> 1/p, T -> 1/T.
    LaurentPoly inverted() const;
    // p -> 1/p only.
    LaurentPoly p_inverted() const;
    // Coefficient of T^e as a polynomial in p.
    LaurentPoly t_coeff(int e) const;
    // Multiply by the monomial p^ep T^et.
    LaurentPoly shifted(int ep, int et) const;
    // Value at p = q of a polynomial with no T.
    BigRat at(const BigInt &q) const;

private:
    TermMap terms_;
};

LaurentPoly pow(const LaurentPoly &x, unsigned e);

// 1 - p^a T^b.
struct GeomFactor {
    int a = 0;
    int b = 1;
    LaurentPoly poly() const;
    friend auto operator<=>(const GeomFactor &, const GeomFactor &) = default;
};

class RatFun {
public:
    RatFun() = default;
    RatFun(long c) : num_(c) {}
    RatFun(const LaurentPoly &num) : num_(num) {}
    RatFun(LaurentPoly num, std::vector<GeomFactor> den);

    // 1 / (1 - p^a T^b)
    static RatFun geometric(int a, int b);

    const LaurentPoly &num() const { return num_; }
    // Sorted multiset.
    const std::vector<GeomFactor> &den() const { return den_; }
    LaurentPoly den_poly() const;

    friend RatFun operator+(const RatFun &x, const RatFun &y);
    friend RatFun operator-(const RatFun &x, const RatFun &y);
    friend RatFun operator*(const RatFun &x, const RatFun &y);
    friend RatFun operator-(const RatFun &x);
    RatFun &operator+=(const RatFun &y) { return *this = *this + y; }
    RatFun &operator*=(const RatFun &y) { return *this = *this * y; }

    // Mathematical equality (cross-multiplication), not structural.
    friend bool operator==(const RatFun &x, const RatFun &y);

private:
    LaurentPoly num_;
    std::vector<GeomFactor> den_;
};

// Polynomial in T with rational coefficients over 1 - c T^b factors: the
// result of specialising p to an integer.
struct RatFunT {
    std::map<int, BigRat> num;
    std::vector<std::pair<BigInt, int>> den;
};

RatFun rf_add(const RatFun &x, const RatFun &y);
RatFun rf_mul(const RatFun &x, const RatFun &y);
RatFun rf_neg(const RatFun &x);
bool rf_equal(const RatFun &x, const RatFun &y);
RatFun rf_invert(const RatFun &x);
// Coefficients of T^0..T^N. Throws std::domain_error if the numerator has
// negative T powers or a factor has b <= 0.
std::vector<LaurentPoly> rf_series(const RatFun &x, int N);
RatFunT rf_eval_p(const RatFun &x, const BigInt &q);
std::vector<BigRat> rf_series(const RatFunT &x, int N);

// If x == c * p^a T^b * y for a signed monomial, returns it.
struct MonomialRatio {
    bool found = false;
    BigInt coeff;
    int p_exp = 0;
    int t_exp = 0;
};
MonomialRatio monomial_ratio(const RatFun &x, const RatFun &y);

// Text and JSON renderings; see exactalg_io.cpp.
std::string to_string(const LaurentPoly &x);
std::string to_string(const RatFun &x);
std::string to_string(const RatFunT &x);
LaurentPoly parse_laurent(const std::string &s);
RatFun parse_ratfun(const std::string &s);

} // namespace nilzeta
