#include <doctest.h>

#include <set>

#include "nilzeta/geometry.hpp"
#include "nilzeta/zetacore.hpp"

using namespace nilzeta;

namespace {

const LaurentPoly P = LaurentPoly::p();

std::vector<BigRat> series_at(Group g, int q, int N) {
    return rf_series(rf_eval_p(zeta_local(g), q), N);
}

// zeta(s) zeta(s-1) zeta(3s-2) by direct convolution of exponents.
BigInt f22_by_convolution(int q, int n) {
    BigInt total = 0;
    for (int k = 0; 3 * k <= n; ++k)
        for (int j = 0; j + 3 * k <= n; ++j) {
            BigInt t = 1;
            for (int e = 0; e < j + 2 * k; ++e) t *= q;
            total += t;
        }
    return total;
}

} // namespace

TEST_CASE("group specs") {
    CHECK(group_spec(Group::F24).hirsch() == 10);
    CHECK(parse_group("F23").dprime == 3);
    CHECK_THROWS_AS(parse_group("F25"), std::invalid_argument);
}

TEST_CASE("numerical data") {
    CHECK(X(1).a == 9);
    CHECK(X(1).b == 5);
    CHECK(X(5).a == 25);
    CHECK(X(5).b == 9);
    CHECK(Y(2).monomial() == LaurentPoly::monomial(1, 13, 5));
    CHECK_THROWS_AS(X(0), std::invalid_argument);
    CHECK_THROWS_AS(Y(4), std::invalid_argument);
    CHECK_THROWS_AS(fano(4), std::invalid_argument);
    for (int i = 1; i <= 3; ++i) {
        FanoData f = fano(i);
        CHECK(f.n == f.c + f.d);
        CHECK(f.count_poly.max_p() == f.d);
    }
}

TEST_CASE("Fano counts agree with enumerated quadric subspaces") {
    for (int q : {2, 3}) {
        CHECK(fano(1).count_poly.at(q) == static_cast<long>(enumerate_quadric(q, 0).size()));
        CHECK(fano(2).count_poly.at(q) == static_cast<long>(enumerate_quadric(q, 1).size()));
        CHECK(2 * fano(3).count_poly.at(q) == static_cast<long>(enumerate_quadric(q, 2).size()));
    }
}

TEST_CASE("Igusa factors") {
    NumericalDatum u{3, 2}, v{1, 1};
    const LaurentPoly ip = LaurentPoly::p(-1);
    CHECK(rf_equal(igusa(1, {u}), RatFun(1 + ip * u.monomial(), {{3, 2}})));
    CHECK(rf_equal(igusa(0, {}), RatFun(1)));
    CHECK_THROWS_AS(igusa(2, {u}), std::invalid_argument);
    // Flags in P^2: b_{1} = b_{2} = 1 + p + p^2 and b_{12} = (1 + p)(1 + p + p^2).
    RatFun c1(1 + ip + ip * ip), c12((1 + ip) * (1 + ip + ip * ip));
    RatFun expect = RatFun(1) + c1 * (u.pole() + v.pole()) + c12 * u.pole() * v.pole();
    CHECK(rf_equal(igusa(2, {u, v}), expect));
}

TEST_CASE("zeta of Z^d counts sublattices") {
    for (int d = 1; d <= 6; ++d) {
        auto s = rf_series(zeta_Zd(d), 5);
        for (int k = 0; k <= 5; ++k) CHECK(s[k] == sublattice_count(d, k));
    }
    CHECK_THROWS_AS(zeta_Zd(0), std::invalid_argument);
}

TEST_CASE("F23 closed form equals the explicit fraction") {
    CHECK(rf_equal(zeta_local(Group::F23), f23_explicit()));
    CHECK_FALSE(rf_equal(zeta_local(Group::F22), f23_explicit()));
}

TEST_CASE("F22 against Dirichlet convolution") {
    for (int q : {2, 3, 5, 7}) {
        auto s = series_at(Group::F22, q, 10);
        for (int n = 0; n <= 10; ++n) CHECK(s[n] == f22_by_convolution(q, n));
    }
}

TEST_CASE("frozen oracle coefficients") {
    // Computed by the central-lattice oracle.
    auto s2 = series_at(Group::F24, 2, 4);
    CHECK(s2 == std::vector<BigRat>{1, 15, 155, 1955, 20211});
    auto s3 = series_at(Group::F24, 3, 3);
    CHECK(s3 == std::vector<BigRat>{1, 40, 1210, 44410});
    CHECK(series_at(Group::F23, 2, 2) == std::vector<BigRat>{1, 7, 35});
    CHECK(series_at(Group::F23, 3, 2) == std::vector<BigRat>{1, 13, 130});
}

TEST_CASE("index-p normal subgroups are the maximal subgroups of the abelianisation") {
    for (Group g : {Group::F22, Group::F23, Group::F24}) {
        auto c = series_coeffs(g, 1).coeffs;
        CHECK(c[1] == gauss_binom(group_spec(g).d, 1));
    }
}

TEST_CASE("functional equations have the class-two shape") {
    for (Group g : {Group::F22, Group::F23, Group::F24}) {
        GroupSpec gs = group_spec(g);
        const int h = gs.hirsch();
        FunctionalEquation fe = check_functional_equation(g);
        CHECK(fe.found);
        CHECK(fe.verified);
        CHECK(fe.sign == (h % 2 ? -1 : 1));
        CHECK(fe.p_exp == h * (h - 1) / 2);
        CHECK(fe.t_exp == 2 * gs.d + gs.dprime);
    }
    FunctionalEquation none = inversion_monomial(RatFun(1 + 2 * P));
    CHECK_FALSE(none.found);
}

TEST_CASE("abscissa estimates") {
    CHECK(abscissa_estimate(Group::F22, 12) == 2);
    CHECK(abscissa_estimate(Group::F23, 12) == 3);
    CHECK(abscissa_estimate(Group::F24, 12) == 4);
    CHECK_THROWS_AS(abscissa_estimate(Group::F22, 0), std::invalid_argument);
}

TEST_CASE("decomposition family") {
    auto fam = decomposition_family();
    int plain = 0, starred = 0;
    std::set<LatticeCase> seen;
    for (const auto &c : fam) {
        c.validate();
        (c.starred.empty() ? plain : starred)++;
        seen.insert(c);
        CHECK(LatticeCase::parse(c.to_string()) == c);
    }
    CHECK(plain == 32);
    CHECK(starred == 48);
    CHECK(seen.size() == 80);
    CHECK(LatticeCase::parse("{1*,3*,4}").to_string() == "{1*,3*,4}");
    CHECK(LatticeCase::parse("{}").all().empty());
    CHECK_THROWS_AS(LatticeCase::parse("{2*,1}"), std::invalid_argument);
    CHECK_THROWS_AS(LatticeCase::parse("{4*}"), std::invalid_argument);
    CHECK(coeff_c(LatticeCase{}) == 1);
}

TEST_CASE("exceptional factors are the starred corrections to low order") {
    for (int i = 1; i <= 3; ++i) {
        const int N = 15;
        auto d = series_diff(truncated_A(LatticeCase{{i}, {}}, N), truncated_A(LatticeCase{{}, {i}}, N));
        auto e = rf_series(exceptional(fano(i)), N);
        CHECK(d == e);
    }
}

TEST_CASE("the generating function A starts at 1") {
    auto s = rf_series(generating_A(), 5);
    CHECK(s[0] == 1);
    // The first positive T-degree among the numerical data is 3.
    CHECK(s[1].is_zero());
    CHECK(s[2].is_zero());
    CHECK_FALSE(s[3].is_zero());
}
