#include "nilzeta/lemmas.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace nilzeta {

namespace {

bool series_equal(const std::vector<LaurentPoly> &a, const std::vector<LaurentPoly> &b) {
    for (const auto &x : series_diff(a, b))
        if (!x.is_zero()) return false;
    return true;
}

LemmaCheck named(const std::string &name, const std::string &range) {
    LemmaCheck c;
    c.name = name;
    c.range = range;
    return c;
}

void record(LemmaCheck &c, bool ok, const std::string &what) {
    ++c.instances;
    if (ok) return;
    if (c.failures++ == 0) c.first_failure = what;
}

std::string set_str(const std::vector<int> &s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

std::vector<int> range_set(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

// Subsets of `base`, every one including the empty set.
std::vector<std::vector<int>> subsets_of(const std::vector<int> &base) {
    std::vector<std::vector<int>> out;
    for (const auto &s : subsets(static_cast<int>(base.size()))) {
        std::vector<int> v;
        for (int k : s) v.push_back(base[k - 1]);
        out.push_back(v);
    }
    return out;
}

// Flag dimension with the flag indices shifted down by k, in P^m.
int dim_shifted(int m, const std::vector<int> &J, int k) {
    std::vector<int> I;
    for (int j : J) I.push_back(j - k);
    return flag_dim(FlagType{m, I});
}

RatFun poles(const std::vector<NumericalDatum> &u) {
    RatFun out(1);
    for (const auto &x : u) out = out * x.pole();
    return out;
}

} // namespace

std::vector<LaurentPoly> series_mul(const std::vector<LaurentPoly> &a, const std::vector<LaurentPoly> &b, int N) {
    std::vector<LaurentPoly> out(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= N && j < static_cast<int>(b.size()); ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return out;
}

LaurentPoly shifting_sum(int r, int c, int t, int lo) {
    if (r < 1 || c < 1) throw std::invalid_argument("shifting_sum: need r, c >= 1");
    LaurentPoly total;
    std::function<void(int, int, const LaurentPoly &)> walk = [&](int k, int mn, const LaurentPoly &w) {
        if (k == c) {
            total += w * LaurentPoly::T(-t * std::min(r, mn));
            return;
        }
        for (int b = lo; b <= r; ++b) walk(k + 1, std::min(mn, b), w * mu(r, b));
    };
    walk(0, r, LaurentPoly(1));
    return total;
}

LemmaCheck check_shifting(int max_r) {
    LemmaCheck out = named("shifting", "1 <= r <= " + std::to_string(max_r) + ", c in {1,3,6}, t in {1,2}");
    for (int c : {1, 3, 6})
        for (int t : {1, 2})
            for (int r = 1; r <= max_r; ++r) {
                LaurentPoly lhs = shifting_sum(r + 1, c, t);
                LaurentPoly rhs = LaurentPoly::T(-t) * shifting_sum(r, c, t) +
                                  LaurentPoly::monomial(1, c * r, -t) * (LaurentPoly(1) - LaurentPoly::p(-c));
                record(out, lhs == rhs,
                       "r=" + std::to_string(r) + " c=" + std::to_string(c) + " t=" + std::to_string(t));
            }
    return out;
}

LemmaCheck check_translation(int max_r) {
    LemmaCheck out = named("translation", "1 <= r <= " + std::to_string(max_r) + ", c in {1,3,6}, t in {1,2}");
    for (int c : {1, 3, 6})
        for (int t : {1, 2})
            for (int r = 1; r <= max_r; ++r) {
                LaurentPoly lhs = shifting_sum(r + 1, c, t, 2);
                LaurentPoly rhs = LaurentPoly::T(-t) * shifting_sum(r, c, t);
                record(out, lhs == rhs,
                       "r=" + std::to_string(r) + " c=" + std::to_string(c) + " t=" + std::to_string(t));
            }
    return out;
}

LemmaCheck check_binomial(int max_n, int max_k) {
    LemmaCheck out = named("binomial", "1 <= n <= " + std::to_string(max_n) + ", 1 <= k <= " + std::to_string(max_k));
    const LaurentPoly one(1);
    for (int n = 1; n <= max_n; ++n)
        for (int k = 1; k <= max_k; ++k) {
            LaurentPoly lhs = LaurentPoly::p(n * k) * (one - LaurentPoly::p(-n));
            LaurentPoly rhs;
            BigInt binom = 1;
            for (int m = 1; m <= n; ++m) {
                binom = binom * (n - m + 1) / m;
                rhs += LaurentPoly(binom) * pow(LaurentPoly::p(k) * (one - LaurentPoly::p(-1)), m) *
                       pow(LaurentPoly::p(k - 1), n - m);
            }
            record(out, lhs == rhs, "n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    return out;
}

LemmaCheck check_crucial(int N) {
    LemmaCheck out = named("crucial", "i in {1,2,3}, series to T^" + std::to_string(N));
    const int d = 4;
    for (int i = 1; i <= 3; ++i) {
        const FanoData fd = fano(i);
        const int a = i * d + fd.d, c = fd.c, t = fd.t;
        std::vector<LaurentPoly> lhs(static_cast<std::size_t>(N) + 1);
        // The smallest T-exponent at level r is (d + i - t) r.
        for (int r = 1; (d + i - t) * r <= N; ++r) {
            LaurentPoly s = shifting_sum(r, c, t) * LaurentPoly::monomial(1, a * r, (d + i) * r);
            for (const auto &[e, k] : s.terms())
                if (e.t >= 0 && e.t <= N) lhs[e.t].add_term(e.p, 0, k);
        }
        LaurentPoly num = LaurentPoly::monomial(1, a, d + i - t) * GeomFactor{a, d + i}.poly();
        RatFun rhs(num, {GeomFactor{a, d + i - t}, GeomFactor{a + c, d + i}});
        record(out, series_equal(lhs, rf_series(rhs, N)), "i=" + std::to_string(i));
    }
    return out;
}

LemmaCheck check_upper_extraction(int N) {
    LemmaCheck out = named("upper extraction", "i in {1,2,3}, J1 below i, J2 above i nonempty, to T^" + std::to_string(N));
    for (int i = 1; i <= 3; ++i) {
        for (const auto &J1 : subsets_of(range_set(1, i - 1))) {
            LatticeCase base_star{J1, {}}, base_plain{J1, {i}};
            base_star.starred.push_back(i);
            auto base_diff = series_diff(truncated_A(base_star, N), truncated_A(base_plain, N));
            for (const auto &J2 : subsets_of(range_set(i + 1, 5))) {
                if (J2.empty()) continue;
                LatticeCase st = base_star, pl = base_plain;
                st.plain = J2;
                pl.plain.insert(pl.plain.end(), J2.begin(), J2.end());
                auto lhs = series_diff(truncated_A(st, N), truncated_A(pl, N));
                std::vector<NumericalDatum> xs;
                for (int j : J2) xs.push_back(X(j));
                RatFun factor = RatFun(LaurentPoly::p(-dim_shifted(5 - i, J2, i))) * poles(xs);
                auto rhs = series_mul(rf_series(factor, N), base_diff, N);
                record(out, series_equal(lhs, rhs),
                       "J1=" + set_str(J1) + " i=" + std::to_string(i) + " J2=" + set_str(J2));
            }
        }
    }
    return out;
}

LemmaCheck check_lower_extraction(int N) {
    LemmaCheck out = named("lower extraction", "(J1, i) in ({1},2), ({1},3), ({2},3), ({1,2},3), to T^" + std::to_string(N));
    const std::vector<std::pair<std::vector<int>, int>> cases{{{1}, 2}, {{1}, 3}, {{2}, 3}, {{1, 2}, 3}};
    for (const auto &[J1, i] : cases) {
        LatticeCase st{J1, {}}, pl{J1, {i}};
        st.starred.push_back(i);
        auto lhs = series_diff(truncated_A(st, N), truncated_A(pl, N));
        auto base = series_diff(truncated_A(LatticeCase{{i}, {}}, N), truncated_A(LatticeCase{{}, {i}}, N));
        std::vector<NumericalDatum> ys;
        for (int j : J1) ys.push_back(Y(j));
        RatFun factor = RatFun(LaurentPoly::p(-flag_dim(FlagType{i - 1, J1}))) * poles(ys);
        auto rhs = series_mul(rf_series(factor, N), base, N);
        record(out, series_equal(lhs, rhs), "J1=" + set_str(J1) + " i=" + std::to_string(i));
    }
    return out;
}

LemmaCheck check_exceptional_identity(int N) {
    LemmaCheck out = named("exceptional factor", "i in {1,2,3}, to T^" + std::to_string(N));
    for (int i = 1; i <= 3; ++i) {
        auto lhs = series_diff(truncated_A(LatticeCase{{i}, {}}, N), truncated_A(LatticeCase{{}, {i}}, N));
        record(out, series_equal(lhs, rf_series(exceptional(fano(i)), N)), "i=" + std::to_string(i));
    }
    return out;
}

LemmaCheck check_decomposition(int N) {
    LemmaCheck out = named("decomposition", "sum of c_I A_I over the 80 index sets, to T^" + std::to_string(N));
    std::vector<LaurentPoly> total(static_cast<std::size_t>(N) + 1);
    for (const auto &c : decomposition_family()) {
        auto a = truncated_A(c, N);
        LaurentPoly cc = coeff_c(c);
        for (int t = 0; t <= N; ++t)
            if (!a[t].is_zero()) total[t] += cc * a[t];
    }
    record(out, series_equal(total, rf_series(generating_A(), N)), "generating function A");
    return out;
}

std::vector<InversionCheck> inversion_identities() {
    std::vector<InversionCheck> out;
    for (int k = 1; k <= 5; ++k) {
        std::vector<NumericalDatum> xs;
        for (int j = 6 - k; j <= 5; ++j) xs.push_back(X(j));
        out.push_back({"igusa I_" + std::to_string(k), inversion_monomial(igusa(k, xs)), k % 2 ? -1 : 1,
                       k * (k + 1) / 2, 0});
    }
    for (int i = 1; i <= 3; ++i) {
        const FanoData fd = fano(i);
        out.push_back({"exceptional E_" + std::to_string(i), inversion_monomial(exceptional(fd)), -1, fd.n + fd.d, 0});
    }
    for (int i = 1; i <= 3; ++i) {
        const FanoData fd = fano(i);
        out.push_back({"fano count n_" + std::to_string(i), inversion_monomial(RatFun(fd.count_poly)), 1, -fd.d, 0});
    }
    out.push_back({"W_0", inversion_monomial(w_factor(0)), -1, 15, 0});
    for (int i = 1; i <= 3; ++i) {
        const FanoData fd = fano(i);
        out.push_back({"W_" + std::to_string(i), inversion_monomial(w_factor(i)), -1, 15 + fd.d, 0});
        out.push_back({"n_" + std::to_string(i) + " W_" + std::to_string(i),
                       inversion_monomial(RatFun(fd.count_poly) * w_factor(i)), -1, 15, 0});
    }
    out.push_back({"A", inversion_monomial(generating_A()), -1, 15, 0});
    return out;
}

bool LemmaSuite::passed() const {
    return std::all_of(lemmas.begin(), lemmas.end(), [](const LemmaCheck &c) { return c.passed(); }) &&
           std::all_of(inversions.begin(), inversions.end(), [](const InversionCheck &c) { return c.passed(); });
}

LemmaSuite lemma_suite() {
    LemmaSuite s;
    s.lemmas = {check_shifting(),         check_translation(),      check_binomial(),
                check_crucial(),          check_upper_extraction(), check_lower_extraction(),
                check_exceptional_identity(), check_decomposition()};
    s.inversions = inversion_identities();
    return s;
}

} // namespace nilzeta
