#include "nilzeta/exactalg.hpp"
#include "nilzeta/json_io.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace nilzeta {

namespace {

std::string monomial_text(int ep, int et, const char *var = "T") {
    std::string s;
    if (ep != 0) s += ep == 1 ? std::string("p") : "p^" + std::to_string(ep);
    if (et != 0) {
        if (!s.empty()) s += "*";
        s += et == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(et);
    }
    return s;
}

template <typename Coeff>
void append_term(std::string &out, bool first, const Coeff &c, const std::string &mono) {
    bool neg = c < 0;
    Coeff a = neg ? Coeff(-c) : c;
    if (first)
        out += neg ? "-" : "";
    else
        out += neg ? " - " : " + ";
    if (mono.empty())
        out += a.get_str();
    else if (a == 1)
        out += mono;
    else
        out += a.get_str() + "*" + mono;
}

class Parser {
public:
    explicit Parser(const std::string &s) {
        for (char ch : s)
            if (!std::isspace(static_cast<unsigned char>(ch))) src_ += ch;
    }

    RatFun ratfun() {
        if (peek() != '(') {
            LaurentPoly n = poly();
            finish();
            return RatFun(n);
        }
        expect('(');
        LaurentPoly n = poly();
        expect(')');
        expect('/');
        expect('(');
        std::vector<GeomFactor> den;
        do {
            expect('(');
            LaurentPoly f = poly();
            expect(')');
            den.push_back(as_factor(f));
        } while (accept('*'));
        expect(')');
        finish();
        return RatFun(n, den);
    }

    LaurentPoly poly() {
        LaurentPoly r;
        bool neg = accept('-');
        term(r, neg);
        while (peek() == '+' || peek() == '-') {
            neg = src_[pos_++] == '-';
            term(r, neg);
        }
        return r;
    }

    void finish() {
        if (pos_ != src_.size()) fail("trailing input");
    }

private:
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string &what) const {
        throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + what + " in \"" + src_ + "\"");
    }

    std::string digits() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected digits");
        return src_.substr(start, pos_ - start);
    }

    int exponent() {
        if (!accept('^')) return 1;
        bool neg = accept('-');
        int e = std::stoi(digits());
        return neg ? -e : e;
    }

    void term(LaurentPoly &r, bool neg) {
        BigInt c = 1;
        bool need_atom = true;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            c = BigInt(digits());
            need_atom = accept('*');
        }
        int ep = 0, et = 0;
        if (need_atom) {
            do {
                char v = peek();
                if (v == 'p') {
                    ++pos_;
                    ep += exponent();
                } else if (v == 'T') {
                    ++pos_;
                    et += exponent();
                } else {
                    fail("expected p or T");
                }
            } while (accept('*'));
        }
        r.add_term(ep, et, neg ? BigInt(-c) : c);
    }

    GeomFactor as_factor(const LaurentPoly &f) const {
        if (f.size() == 2 && f.coeff(0, 0) == 1) {
            for (const auto &[e, c] : f.terms())
                if (!(e.p == 0 && e.t == 0) && c == -1 && e.p >= 0 && e.t >= 1) return GeomFactor{e.p, e.t};
        }
        fail("denominator factor is not of the form 1 - p^a*T^b");
    }

    std::string src_;
    std::size_t pos_ = 0;
};

} // namespace

std::string to_string(const LaurentPoly &x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto &[e, c] : x.terms()) {
        append_term(out, first, c, monomial_text(e.p, e.t));
        first = false;
    }
    return out;
}

std::string to_string(const RatFun &x) {
    if (x.den().empty()) return to_string(x.num());
    std::string out = "(" + to_string(x.num()) + ")/(";
    for (std::size_t i = 0; i < x.den().size(); ++i) {
        if (i) out += "*";
        out += "(" + to_string(x.den()[i].poly()) + ")";
    }
    return out + ")";
}

std::string to_string(const RatFunT &x) {
    std::string num;
    bool first = true;
    for (const auto &[t, c] : x.num) {
        append_term(num, first, c, monomial_text(0, t));
        first = false;
    }
    if (first) num = "0";
    if (x.den.empty()) return num;
    std::string out = "(" + num + ")/(";
    for (std::size_t i = 0; i < x.den.size(); ++i) {
        if (i) out += "*";
        std::string f = "1";
        append_term(f, false, BigInt(-x.den[i].first), monomial_text(0, x.den[i].second));
        out += "(" + f + ")";
    }
    return out + ")";
}

LaurentPoly parse_laurent(const std::string &s) {
    Parser ps(s);
    LaurentPoly r = ps.poly();
    ps.finish();
    return r;
}

RatFun parse_ratfun(const std::string &s) { return Parser(s).ratfun(); }

nlohmann::json bigint_json(const BigInt &c) {
    if (c.fits_slong_p()) return c.get_si();
    return c.get_str();
}

BigInt bigint_from_json(const nlohmann::json &j) {
    if (j.is_number_integer()) return BigInt(j.get<long>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw std::invalid_argument("integer expected in JSON");
}

void to_json(nlohmann::json &j, const LaurentPoly &x) {
    j = nlohmann::json::array();
    for (const auto &[e, c] : x.terms()) j.push_back({e.p, e.t, bigint_json(c)});
}

void from_json(const nlohmann::json &j, LaurentPoly &x) {
    x = LaurentPoly();
    for (const auto &t : j) {
        if (!t.is_array() || t.size() != 3) throw std::invalid_argument("term must be [e_p, e_T, coeff]");
        BigInt c = bigint_from_json(t[2]);
        if (c == 0) throw std::invalid_argument("zero coefficient in term list");
        x.add_term(t[0].get<int>(), t[1].get<int>(), c);
    }
}

void to_json(nlohmann::json &j, const RatFun &x) {
    nlohmann::json den = nlohmann::json::array();
    for (const auto &f : x.den()) den.push_back({f.a, f.b});
    j = {{"num", x.num()}, {"den", den}};
}

void from_json(const nlohmann::json &j, RatFun &x) {
    LaurentPoly num = j.at("num").get<LaurentPoly>();
    std::vector<GeomFactor> den;
    for (const auto &f : j.at("den")) {
        GeomFactor g{f.at(0).get<int>(), f.at(1).get<int>()};
        if (g.a < 0 || g.b < 1) throw std::invalid_argument("factor must have a >= 0, b >= 1");
        den.push_back(g);
    }
    x = RatFun(num, den);
}

} // namespace nilzeta
