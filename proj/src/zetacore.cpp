#include "nilzeta/zetacore.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nilzeta {

GroupSpec group_spec(Group g) {
    switch (g) {
    case Group::F22:
        return {g, "F22", 2, 1};
    case Group::F23:
        return {g, "F23", 3, 3};
    case Group::F24:
        return {g, "F24", 4, 6};
    }
    throw std::invalid_argument("unknown group");
}

GroupSpec parse_group(const std::string &name) {
    if (name == "F22") return group_spec(Group::F22);
    if (name == "F23") return group_spec(Group::F23);
    if (name == "F24") return group_spec(Group::F24);
    throw std::invalid_argument("unknown group '" + name + "' (expected F22, F23 or F24)");
}

NumericalDatum X(int i) {
    if (i < 1 || i > 5) throw std::invalid_argument("X_i: i must be in 1..5");
    return {i * (10 - i), 4 + i};
}

NumericalDatum Y(int i) {
    switch (i) {
    case 1:
        return {8, 3};
    case 2:
        return {13, 5};
    case 3:
        return {15, 6};
    }
    throw std::invalid_argument("Y_i: i must be in 1..3");
}

FanoData fano(int i) {
    const LaurentPoly p = LaurentPoly::p();
    const LaurentPoly one(1);
    switch (i) {
    case 1:
        return {1, 4, 1, 5, 2, (p * p + one) * (p * p + p + one)};
    case 2:
        return {2, 5, 3, 8, 1, (p + one) * (p * p + one) * (p * p + p + one)};
    case 3:
        return {3, 3, 6, 9, 1, (p * p + one) * (p + one)};
    }
    throw std::invalid_argument("fano: level must be 1, 2 or 3");
}

RatFun zeta_Zd(int d) {
    if (d < 1) throw std::invalid_argument("zeta_Zd: d must be positive");
    std::vector<GeomFactor> den;
    for (int j = 0; j < d; ++j) den.push_back({j, 1});
    return RatFun(LaurentPoly(1), den);
}

RatFun igusa(int m, const std::vector<NumericalDatum> &vars) {
    if (m <= 0) return RatFun(1);
    if (static_cast<int>(vars.size()) != m) throw std::invalid_argument("igusa: need exactly m variables");
    // Over the common denominator prod (1 - U_i).
    LaurentPoly num;
    for (const auto &I : subsets(m)) {
        LaurentPoly term = flag_count(FlagType{m, I}).p_inverted();
        std::size_t pos = 0;
        for (int k = 1; k <= m; ++k) {
            const auto &u = vars[k - 1];
            if (pos < I.size() && I[pos] == k) {
                term *= u.monomial();
                ++pos;
            } else {
                term *= GeomFactor{u.a, u.b}.poly();
            }
        }
        num += term;
    }
    std::vector<GeomFactor> den;
    for (const auto &u : vars) den.push_back({u.a, u.b});
    return RatFun(num, den);
}

RatFun exceptional(const FanoData &fd) {
    NumericalDatum x = X(fd.i), y = Y(fd.i);
    LaurentPoly num = y.monomial().shifted(-fd.d, 0) - x.monomial().shifted(-fd.n, 0);
    return RatFun(num, {GeomFactor{x.a, x.b}, GeomFactor{y.a, y.b}});
}

RatFun w_factor(int i) {
    if (i < 0 || i > 3) throw std::invalid_argument("w_factor: i must be in 0..3");
    std::vector<NumericalDatum> upper;
    for (int k = i + 1; k <= 5; ++k) upper.push_back(X(k));
    if (i == 0) return igusa(5, upper);
    std::vector<NumericalDatum> lower;
    for (int k = 1; k <= i - 1; ++k) lower.push_back(Y(k));
    return igusa(5 - i, upper) * exceptional(fano(i)) * igusa(i - 1, lower);
}

RatFun generating_A() {
    RatFun a = w_factor(0);
    for (int i = 1; i <= 3; ++i) a = a + RatFun(fano(i).count_poly) * w_factor(i);
    return a;
}

RatFun zeta_local(Group g) {
    switch (g) {
    case Group::F22:
        return zeta_Zd(2) * RatFun::geometric(2, 3);
    case Group::F23:
        return zeta_Zd(3) * RatFun::geometric(9, 6) * igusa(2, {{8, 5}, {5, 3}});
    case Group::F24:
        return zeta_Zd(4) * RatFun::geometric(24, 10) * generating_A();
    }
    throw std::invalid_argument("unknown group");
}

RatFun f23_explicit() {
    return parse_ratfun("(1 + p^3*T^3 + p^4*T^3 + p^6*T^5 + p^7*T^5 + p^10*T^8)/"
                        "((1 - T)*(1 - p*T)*(1 - p^2*T)*(1 - p^5*T^3)*(1 - p^8*T^5)*(1 - p^9*T^6))");
}

FunctionalEquation inversion_monomial(const RatFun &x) {
    FunctionalEquation fe;
    RatFun inv = rf_invert(x);
    MonomialRatio m = monomial_ratio(inv, x);
    if (!m.found || (m.coeff != 1 && m.coeff != -1)) return fe;
    fe.found = true;
    fe.sign = m.coeff > 0 ? 1 : -1;
    fe.p_exp = m.p_exp;
    fe.t_exp = m.t_exp;
    fe.verified = rf_equal(inv, RatFun(LaurentPoly::monomial(m.coeff, m.p_exp, m.t_exp)) * x);
    return fe;
}

FunctionalEquation check_functional_equation(Group g) {
    return inversion_monomial(zeta_local(g));
}

SeriesCoeffs series_coeffs(Group g, int N) {
    if (N < 0) throw std::invalid_argument("series_coeffs: N must be nonnegative");
    return {group_spec(g), N, rf_series(zeta_local(g), N)};
}

BigRat abscissa_estimate(Group g, int N) {
    if (N < 1) throw std::invalid_argument("abscissa_estimate: N must be positive");
    auto s = series_coeffs(g, N).coeffs;
    BigRat best = 0;
    for (int n = 1; n <= N; ++n) {
        if (s[n].is_zero()) continue;
        BigRat v(s[n].max_p() + 1, n);
        v.canonicalize();
        if (v > best) best = v;
    }
    return best;
}

void LatticeCase::validate() const {
    auto sorted_unique = [](const std::vector<int> &v) {
        return std::is_sorted(v.begin(), v.end()) && std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (!sorted_unique(starred) || !sorted_unique(plain)) throw std::invalid_argument("LatticeCase: indices must be increasing");
    for (int s : starred)
        if (s < 1 || s > 3) throw std::invalid_argument("LatticeCase: starred indices lie in 1..3");
    for (int i : plain)
        if (i < 1 || i > 5) throw std::invalid_argument("LatticeCase: plain indices lie in 1..5");
    if (!plain.empty() && plain.front() <= max_star())
        throw std::invalid_argument("LatticeCase: plain indices must exceed every starred index");
}

std::vector<int> LatticeCase::all() const {
    std::vector<int> a = starred;
    a.insert(a.end(), plain.begin(), plain.end());
    std::sort(a.begin(), a.end());
    return a;
}

std::string LatticeCase::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int i : starred) {
        s += (first ? "" : ",") + std::to_string(i) + "*";
        first = false;
    }
    for (int i : plain) {
        s += (first ? "" : ",") + std::to_string(i);
        first = false;
    }
    return s + "}";
}

LatticeCase LatticeCase::parse(const std::string &text) {
    LatticeCase c;
    std::string s;
    for (char ch : text)
        if (ch != '{' && ch != '}' && ch != ' ') s += ch;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        bool star = item.back() == '*';
        if (star) item.pop_back();
        int v = std::stoi(item);
        (star ? c.starred : c.plain).push_back(v);
    }
    std::sort(c.starred.begin(), c.starred.end());
    std::sort(c.plain.begin(), c.plain.end());
    c.validate();
    return c;
}

std::vector<LatticeCase> decomposition_family() {
    std::vector<LatticeCase> out;
    for (const auto &I : subsets(5)) out.push_back({{}, I});
    for (int k = 1; k <= 3; ++k)
        for (const auto &J1 : subsets(k - 1))
            for (const auto &J2 : subsets(5 - k)) {
                LatticeCase c{J1, {}};
                c.starred.push_back(k);
                for (int j : J2) c.plain.push_back(j + k);
                out.push_back(c);
            }
    return out;
}

namespace {

LaurentPoly fano_count(int i) { return i <= 3 ? fano(i).count_poly : LaurentPoly(); }

// b_J for flags in P^m.
LaurentPoly b(int m, const std::vector<int> &J) { return flag_count(FlagType{m, J}); }

std::vector<int> shifted_down(const std::vector<int> &J, int k) {
    std::vector<int> out;
    for (int j : J) out.push_back(j - k);
    return out;
}

} // namespace

LaurentPoly coeff_c(const LatticeCase &c) {
    c.validate();
    if (c.starred.empty()) {
        if (c.plain.empty()) return 1;
        const int i1 = c.plain.front();
        std::vector<int> rest(c.plain.begin() + 1, c.plain.end());
        return b(5, c.plain) - fano_count(i1) * b(5 - i1, shifted_down(rest, i1));
    }
    const int k = c.max_star();
    std::vector<int> J1(c.starred.begin(), c.starred.end() - 1);
    LaurentPoly out = fano_count(k) * b(5 - k, shifted_down(c.plain, k)) * b(k - 1, J1);
    if (!c.plain.empty()) {
        const int j1 = c.plain.front();
        std::vector<int> rest(c.plain.begin() + 1, c.plain.end());
        out -= fano_count(j1) * b(5 - j1, shifted_down(rest, j1)) * b(j1 - 1, c.starred);
    }
    return out;
}

std::vector<LaurentPoly> series_diff(const std::vector<LaurentPoly> &a, const std::vector<LaurentPoly> &b) {
    std::vector<LaurentPoly> out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.size()) out[i] += a[i];
        if (i < b.size()) out[i] -= b[i];
    }
    return out;
}

} // namespace nilzeta
