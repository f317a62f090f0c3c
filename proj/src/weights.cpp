#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

#include "nilzeta/geometry.hpp"
#include "nilzeta/oracle.hpp"

namespace nilzeta {

const std::vector<WeightCase> &all_weight_cases() {
    static const std::vector<WeightCase> cases{WeightCase::Generic, WeightCase::Point,  WeightCase::Line,
                                               WeightCase::PointLine, WeightCase::PlaneA, WeightCase::PlaneB,
                                               WeightCase::MixedR3};
    return cases;
}

std::string to_string(WeightCase c) {
    switch (c) {
    case WeightCase::Generic:
        return "generic";
    case WeightCase::Point:
        return "point";
    case WeightCase::Line:
        return "line";
    case WeightCase::PointLine:
        return "point-line";
    case WeightCase::PlaneA:
        return "plane-A";
    case WeightCase::PlaneB:
        return "plane-B";
    case WeightCase::MixedR3:
        return "mixed-r3";
    }
    throw std::invalid_argument("unknown weight case");
}

WeightCase parse_weight_case(const std::string &s) {
    for (WeightCase c : all_weight_cases())
        if (to_string(c) == s) return c;
    throw std::invalid_argument("unknown weight case '" + s +
                                "' (expected generic, point, line, point-line, plane-A, plane-B or mixed-r3)");
}

int weight_case_arity(WeightCase c) {
    switch (c) {
    case WeightCase::PointLine:
        return 2;
    case WeightCase::MixedR3:
        return 3;
    default:
        return 1;
    }
}

namespace {

using Vec6 = std::array<std::int64_t, 6>;

// Pivot of alpha_j: the last coordinate where alpha_j is 1 and every later
// alpha vanishes.
std::vector<int> pivots(const std::vector<Vec6> &alpha) {
    std::vector<int> out;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        int piv = -1;
        for (int c = 5; c >= 0 && piv < 0; --c) {
            if (alpha[j][c] != 1 || std::find(out.begin(), out.end(), c) != out.end()) continue;
            bool clear = true;
            for (std::size_t k = j + 1; k < alpha.size(); ++k) clear = clear && alpha[k][c] == 0;
            if (clear) piv = c;
        }
        if (piv < 0) throw std::invalid_argument("FlagLift: alpha vectors are not in pivot form");
        out.push_back(piv);
    }
    return out;
}

} // namespace

CentreHNF FlagLift::lattice(int q) const {
    if (alpha.size() != moduli.size()) throw std::invalid_argument("FlagLift: one modulus per alpha");
    const auto piv = pivots(alpha);
    // Rows: the alphas, then unit vectors on the remaining coordinates.
    IntMatrix<std::int64_t, 6> A = IntMatrix<std::int64_t, 6>::Zero(6, 6);
    std::vector<int> scale(6, 0);
    int row = 0;
    for (std::size_t j = 0; j < alpha.size(); ++j, ++row) {
        for (int c = 0; c < 6; ++c) A(row, c) = alpha[j][c];
        scale[row] = moduli[j];
    }
    std::vector<int> order;
    for (int c = 0; c < 6; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) {
            A(row++, c) = 1;
            order.push_back(c);
        }
    order.insert(order.end(), piv.begin(), piv.end());

    // Gauss-Jordan with unit pivots; the completion is unimodular by construction.
    IntMatrix<std::int64_t, 6> inv = IntMatrix<std::int64_t, 6>::Identity(6, 6);
    std::vector<char> used(6, 0);
    for (int c : order) {
        int pr = -1;
        for (int i = 0; i < 6 && pr < 0; ++i)
            if (!used[i] && (A(i, c) == 1 || A(i, c) == -1)) pr = i;
        if (pr < 0) throw std::logic_error("FlagLift: completion is not unimodular");
        used[pr] = 1;
        if (A(pr, c) == -1) {
            A.row(pr) *= -1;
            inv.row(pr) *= -1;
        }
        for (int i = 0; i < 6; ++i) {
            if (i == pr || A(i, c) == 0) continue;
            std::int64_t f = A(i, c);
            A.row(i) -= f * A.row(pr);
            inv.row(i) -= f * inv.row(pr);
        }
    }
    // Now inv * A0 = P for a permutation P, so A0^{-1} = P^T inv.
    IntMatrix<std::int64_t, 6> A0inv(6, 6);
    for (int i = 0; i < 6; ++i) {
        int c = 0;
        while (A(i, c) == 0) ++c;
        A0inv.row(c) = inv.row(i);
    }
    // L = A0^{-1} D Z^6
    IntMatrix<std::int64_t> gens(6, 6);
    for (int j = 0; j < 6; ++j) gens.col(j) = A0inv.col(j) * detail::ipow(q, scale[j]);
    auto H = hnf(gens);
    CentreHNF out;
    out.basis = H.basis;
    return out;
}

namespace {

struct Param {
    int j;   // alpha index
    int c;   // coordinate
    int mod; // parameter ranges over pZ / q^mod (or Z / q^mod for the generic case)
};

struct Frame {
    LatticeType type;
    std::vector<int> moduli;
    std::vector<Vec6> base;
    std::vector<Param> params;
    bool full_range = false; // parameters not restricted to pZ
};

Frame make_frame(WeightCase wc, const std::vector<int> &r) {
    Frame f;
    std::vector<int> piv;
    std::map<int, int> rr;
    switch (wc) {
    case WeightCase::Generic:
    case WeightCase::Point:
        rr = {{1, r[0]}};
        piv = {5};
        break;
    case WeightCase::Line:
        rr = {{2, r[0]}};
        piv = {5, 4};
        break;
    case WeightCase::PointLine:
        rr = {{1, r[0]}, {2, r[1]}};
        piv = {5, 4};
        break;
    case WeightCase::PlaneA:
        rr = {{3, r[0]}};
        piv = {0, 1, 2};
        break;
    case WeightCase::PlaneB:
        rr = {{3, r[0]}};
        piv = {5, 4, 3};
        break;
    case WeightCase::MixedR3:
        rr = {{1, r[0]}, {2, r[1]}, {3, r[2]}};
        piv = {5, 4, 3};
        break;
    }
    f.type.r = rr;
    f.full_range = wc == WeightCase::Generic;
    const int l = static_cast<int>(piv.size());
    for (int j = 1; j <= l; ++j) {
        int m = 0;
        for (const auto &[i, ri] : rr)
            if (i >= j) m += ri;
        f.moduli.push_back(m);
    }
    for (int j = 0; j < l; ++j) {
        Vec6 a{};
        a[piv[j]] = 1;
        f.base.push_back(a);
        for (int c = 0; c < 6; ++c) {
            auto it = std::find(piv.begin(), piv.end(), c);
            int mod;
            if (it == piv.end())
                mod = f.moduli[j];
            else if (it - piv.begin() > j)
                mod = f.moduli[j] - f.moduli[it - piv.begin()];
            else
                continue;
            if (f.full_range || mod > 1) f.params.push_back({j, c, mod});
        }
    }
    return f;
}

int val(std::int64_t x, int q, int cap) { return detail::valuation<std::int64_t>(x, q, cap); }

// The closed-form w' of the weight lemmas, in the quadric invariants of the
// alphas.
int predicted_wprime(WeightCase wc, const std::vector<int> &r, const std::vector<Vec6> &a, int q) {
    auto Q = [&](int i) { return pfaffian(a[i]); };
    auto B = [&](int i, int j) { return pfaffian_polar(a[i], a[j]); };
    switch (wc) {
    case WeightCase::Generic:
        return 5 * r[0];
    case WeightCase::Point:
        return 5 * r[0] - 2 * std::min(r[0], val(Q(0), q, r[0]));
    case WeightCase::Line:
        return 6 * r[0] - std::min({r[0], val(Q(0), q, r[0]), val(B(0, 1), q, r[0]), val(Q(1), q, r[0])});
    case WeightCase::PointLine: {
        const int r1 = r[0], r2 = r[1], m1 = r1 + r2;
        const int b1 = val(Q(0), q, m1);
        return 6 * r2 + 5 * r1 - std::min(r1, b1) -
               std::min({m1, b1, val(B(0, 1), q, r2) + r1, val(Q(1), q, r2) + r1});
    }
    case WeightCase::PlaneA:
        return 7 * r[0];
    case WeightCase::PlaneB: {
        const int R = r[0];
        return 7 * R - std::min({R, val(Q(0), q, R), val(Q(1), q, R), val(Q(2), q, R), val(B(0, 1), q, R),
                                 val(B(0, 2), q, R), val(B(1, 2), q, R)});
    }
    case WeightCase::MixedR3: {
        const int r1 = r[0], r2 = r[1], r3 = r[2], R = r1 + r2 + r3;
        const int b1 = val(Q(0), q, R);
        const int c2 = std::min(val(B(0, 1), q, r2 + r3), val(Q(1), q, r2 + r3));
        const int c3 = std::min({val(B(0, 2), q, r3), val(B(1, 2), q, r3), val(Q(2), q, r3)});
        return 5 * r1 + 6 * r2 + 7 * r3 - std::min(r1, b1) - std::min({R, b1, c2 + r1, c3 + r1 + r2});
    }
    }
    throw std::invalid_argument("unknown weight case");
}

} // namespace

WeightReport verify_weight_lemma(WeightCase wc, int q, const std::vector<int> &r, const WeightOptions &opt) {
    if (q != 2 && q != 3) throw std::invalid_argument("verify_weight_lemma: q must be 2 or 3");
    if (static_cast<int>(r.size()) != weight_case_arity(wc))
        throw std::invalid_argument("verify_weight_lemma: case " + to_string(wc) + " takes " +
                                    std::to_string(weight_case_arity(wc)) + " r-values");
    for (int x : r)
        if (x < 1 || x > 2) throw std::invalid_argument("verify_weight_lemma: r-values lie in 1..2");

    const Frame f = make_frame(wc, r);
    const LieRingSpec spec = lie_ring(Group::F24);
    WeightReport rep;
    rep.wcase = wc;
    rep.q = q;
    rep.r = r;

    // Parameter k ranges over t * step with 0 <= t < size.
    std::vector<std::int64_t> size, step;
    double total = 1;
    for (const auto &p : f.params) {
        const int e = f.full_range ? p.mod : p.mod - 1;
        size.push_back(detail::ipow(q, e));
        step.push_back(f.full_range ? 1 : q);
        total *= static_cast<double>(size.back());
    }
    rep.exhaustive = total <= static_cast<double>(opt.max_exhaustive);

    auto check = [&](const std::vector<std::int64_t> &t) {
        std::vector<Vec6> a = f.base;
        for (std::size_t k = 0; k < f.params.size(); ++k) a[f.params[k].j][f.params[k].c] = t[k] * step[k];
        if (wc == WeightCase::Generic && val(pfaffian(a[0]), q, 1) > 0) return;
        FlagLift lift{f.type, a, f.moduli};
        CenterLattice cl = center_lattice(spec, lift.lattice(q), q);
        int pred = predicted_wprime(wc, r, a, q);
        ++rep.tuples;
        ++rep.histogram[cl.wprime];
        if (cl.wprime != pred) {
            ++rep.mismatch_count;
            if (rep.mismatches.size() < 10) rep.mismatches.push_back({a, cl.wprime, pred});
        }
    };

    const std::size_t np = f.params.size();
    std::vector<std::int64_t> t(np, 0);
    if (rep.exhaustive) {
        for (;;) {
            check(t);
            std::size_t s = np;
            while (s > 0) {
                if (++t[s - 1] < size[s - 1]) break;
                t[s - 1] = 0;
                --s;
            }
            if (s == 0) break;
        }
        return rep;
    }
    // Stratified by valuation: each parameter picks its valuation uniformly,
    // then a random unit part.
    std::uint64_t seed = opt.seed ^ (static_cast<std::uint64_t>(wc) << 32) ^ (static_cast<std::uint64_t>(q) << 24);
    for (int x : r) seed = seed * 31 + static_cast<std::uint64_t>(x);
    std::mt19937_64 rng(seed);
    for (std::int64_t s = 0; s < opt.samples; ++s) {
        for (std::size_t k = 0; k < np; ++k) {
            const int e = f.full_range ? f.params[k].mod : f.params[k].mod - 1;
            const int v = static_cast<int>(rng() % static_cast<std::uint64_t>(e + 1));
            if (v == e) {
                t[k] = 0;
                continue;
            }
            const std::int64_t span = detail::ipow(q, e - v);
            std::int64_t u;
            do u = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(span));
            while (u % q == 0);
            t[k] = u * detail::ipow(q, v);
        }
        check(t);
    }
    return rep;
}

} // namespace nilzeta
