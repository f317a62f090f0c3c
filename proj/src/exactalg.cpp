#include "nilzeta/exactalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilzeta {

LaurentPoly::LaurentPoly(long c) {
    if (c != 0) terms_.emplace(Exponent{0, 0}, BigInt(c));
}

LaurentPoly::LaurentPoly(const BigInt &c) {
    if (c != 0) terms_.emplace(Exponent{0, 0}, c);
}

LaurentPoly LaurentPoly::monomial(const BigInt &c, int ep, int et) {
    LaurentPoly r;
    r.add_term(ep, et, c);
    return r;
}

BigInt LaurentPoly::coeff(int ep, int et) const {
    auto it = terms_.find(Exponent{ep, et});
    return it == terms_.end() ? BigInt(0) : it->second;
}

void LaurentPoly::add_term(int ep, int et, const BigInt &c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(Exponent{ep, et}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly &LaurentPoly::operator+=(const LaurentPoly &o) {
    for (const auto &[e, c] : o.terms_) add_term(e.p, e.t, c);
    return *this;
}

LaurentPoly &LaurentPoly::operator-=(const LaurentPoly &o) {
    for (const auto &[e, c] : o.terms_) add_term(e.p, e.t, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b) {
    LaurentPoly r;
    BigInt prod;
    for (const auto &[ea, ca] : a.terms_)
        for (const auto &[eb, cb] : b.terms_) {
            prod = ca * cb;
            r.add_term(ea.p + eb.p, ea.t + eb.t, prod);
        }
    return r;
}

LaurentPoly &LaurentPoly::operator*=(const LaurentPoly &o) { return *this = *this * o; }

LaurentPoly operator-(const LaurentPoly &a) {
    LaurentPoly r = a;
    for (auto &kv : r.terms_) kv.second = -kv.second;
    return r;
}

namespace {
void require_nonzero(const LaurentPoly &x) {
    if (x.is_zero()) throw std::domain_error("degree of the zero polynomial");
}
} // namespace

int LaurentPoly::min_t() const {
    require_nonzero(*this);
    int m = terms_.begin()->first.t;
    for (const auto &kv : terms_) m = std::min(m, kv.first.t);
    return m;
}

int LaurentPoly::max_t() const {
    require_nonzero(*this);
    int m = terms_.begin()->first.t;
    for (const auto &kv : terms_) m = std::max(m, kv.first.t);
    return m;
}

int LaurentPoly::min_p() const {
    require_nonzero(*this);
    return terms_.begin()->first.p;
}

int LaurentPoly::max_p() const {
    require_nonzero(*this);
    return terms_.rbegin()->first.p;
}

LaurentPoly LaurentPoly::inverted() const {
    LaurentPoly r;
    for (const auto &[e, c] : terms_) r.terms_.emplace(Exponent{-e.p, -e.t}, c);
    return r;
}

LaurentPoly LaurentPoly::p_inverted() const {
    LaurentPoly r;
    for (const auto &[e, c] : terms_) r.terms_.emplace(Exponent{-e.p, e.t}, c);
    return r;
}

LaurentPoly LaurentPoly::t_coeff(int e) const {
    LaurentPoly r;
    for (const auto &[x, c] : terms_)
        if (x.t == e) r.terms_.emplace(Exponent{x.p, 0}, c);
    return r;
}

LaurentPoly LaurentPoly::shifted(int ep, int et) const {
    LaurentPoly r;
    for (const auto &[e, c] : terms_) r.terms_.emplace(Exponent{e.p + ep, e.t + et}, c);
    return r;
}

BigRat LaurentPoly::at(const BigInt &q) const {
    BigRat sum = 0;
    for (const auto &[e, c] : terms_) {
        if (e.t != 0) throw std::domain_error("LaurentPoly::at: polynomial involves T");
        BigInt qp;
        mpz_pow_ui(qp.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(e.p < 0 ? -e.p : e.p));
        if (e.p >= 0)
            sum += BigRat(c * qp);
        else
            sum += BigRat(c, qp);
    }
    sum.canonicalize();
    return sum;
}

LaurentPoly pow(const LaurentPoly &x, unsigned e) {
    LaurentPoly r(1), base = x;
    while (e) {
        if (e & 1u) r *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return r;
}

LaurentPoly GeomFactor::poly() const {
    LaurentPoly r(1);
    r.add_term(a, b, -1);
    return r;
}

RatFun::RatFun(LaurentPoly num, std::vector<GeomFactor> den) : num_(std::move(num)), den_(std::move(den)) {
    std::sort(den_.begin(), den_.end());
}

RatFun RatFun::geometric(int a, int b) { return RatFun(LaurentPoly(1), {GeomFactor{a, b}}); }

namespace {

using Multiset = std::vector<GeomFactor>;

LaurentPoly product(const Multiset &fs) {
    LaurentPoly r(1);
    for (const auto &f : fs) r *= f.poly();
    return r;
}

// Both inputs sorted.
Multiset ms_difference(const Multiset &a, const Multiset &b) {
    Multiset r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

Multiset ms_union(const Multiset &a, const Multiset &b) {
    Multiset r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

Multiset ms_intersection(const Multiset &a, const Multiset &b) {
    Multiset r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

// x.num * prod(y.den \ common) and y.num * prod(x.den \ common).
std::pair<LaurentPoly, LaurentPoly> cross(const RatFun &x, const RatFun &y) {
    Multiset common = ms_intersection(x.den(), y.den());
    return {x.num() * product(ms_difference(y.den(), common)), y.num() * product(ms_difference(x.den(), common))};
}

} // namespace

LaurentPoly RatFun::den_poly() const { return product(den_); }

RatFun operator+(const RatFun &x, const RatFun &y) {
    if (x.num_.is_zero()) return y;
    if (y.num_.is_zero()) return x;
    Multiset d = ms_union(x.den_, y.den_);
    LaurentPoly n = x.num_ * product(ms_difference(d, x.den_)) + y.num_ * product(ms_difference(d, y.den_));
    return RatFun(std::move(n), std::move(d));
}

RatFun operator-(const RatFun &x) { return RatFun(-x.num_, x.den_); }

RatFun operator-(const RatFun &x, const RatFun &y) { return x + (-y); }

RatFun operator*(const RatFun &x, const RatFun &y) {
    Multiset d = x.den_;
    d.insert(d.end(), y.den_.begin(), y.den_.end());
    return RatFun(x.num_ * y.num_, std::move(d));
}

bool operator==(const RatFun &x, const RatFun &y) {
    auto [l, r] = cross(x, y);
    return l == r;
}

RatFun rf_add(const RatFun &x, const RatFun &y) { return x + y; }
RatFun rf_mul(const RatFun &x, const RatFun &y) { return x * y; }
RatFun rf_neg(const RatFun &x) { return -x; }
bool rf_equal(const RatFun &x, const RatFun &y) { return x == y; }

RatFun rf_invert(const RatFun &x) {
    // 1/(1 - p^-a T^-b) = -p^a T^b / (1 - p^a T^b)
    int ep = 0, et = 0;
    for (const auto &f : x.den()) {
        ep += f.a;
        et += f.b;
    }
    BigInt sign = (x.den().size() % 2 == 0) ? 1 : -1;
    return RatFun(x.num().inverted() * LaurentPoly::monomial(sign, ep, et), x.den());
}

std::vector<LaurentPoly> rf_series(const RatFun &x, int N) {
    if (N < 0) throw std::invalid_argument("rf_series: negative order");
    std::vector<LaurentPoly> s(static_cast<std::size_t>(N) + 1);
    for (const auto &[e, c] : x.num().terms()) {
        if (e.t < 0) throw std::domain_error("rf_series: numerator has negative T powers");
        if (e.t <= N) s[e.t].add_term(e.p, 0, c);
    }
    for (const auto &f : x.den()) {
        if (f.b <= 0) throw std::domain_error("rf_series: factor without positive T degree");
        for (int k = f.b; k <= N; ++k)
            if (!s[k - f.b].is_zero()) s[k] += s[k - f.b].shifted(f.a, 0);
    }
    return s;
}

RatFunT rf_eval_p(const RatFun &x, const BigInt &q) {
    RatFunT r;
    for (const auto &[e, c] : x.num().terms()) {
        BigRat v = LaurentPoly::monomial(c, e.p, 0).at(q);
        auto it = r.num.try_emplace(e.t, 0).first;
        it->second += v;
        if (it->second == 0) r.num.erase(it);
    }
    for (const auto &f : x.den()) {
        BigInt c;
        mpz_pow_ui(c.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(f.a));
        r.den.emplace_back(c, f.b);
    }
    return r;
}

std::vector<BigRat> rf_series(const RatFunT &x, int N) {
    if (N < 0) throw std::invalid_argument("rf_series: negative order");
    std::vector<BigRat> s(static_cast<std::size_t>(N) + 1, BigRat(0));
    for (const auto &[t, c] : x.num) {
        if (t < 0) throw std::domain_error("rf_series: numerator has negative T powers");
        if (t <= N) s[t] += c;
    }
    for (const auto &[c, b] : x.den) {
        if (b <= 0) throw std::domain_error("rf_series: factor without positive T degree");
        for (int k = b; k <= N; ++k) s[k] += c * s[k - b];
    }
    return s;
}

MonomialRatio monomial_ratio(const RatFun &x, const RatFun &y) {
    MonomialRatio out;
    auto [l, r] = cross(x, y);
    if (l.is_zero() || r.is_zero()) return out;
    const auto &[el, cl] = *l.terms().rbegin();
    const auto &[er, cr] = *r.terms().rbegin();
    if (!mpz_divisible_p(cl.get_mpz_t(), cr.get_mpz_t())) return out;
    BigInt c = cl / cr;
    if (r * LaurentPoly::monomial(c, el.p - er.p, el.t - er.t) != l) return out;
    out.found = true;
    out.coeff = c;
    out.p_exp = el.p - er.p;
    out.t_exp = el.t - er.t;
    return out;
}

} // namespace nilzeta
