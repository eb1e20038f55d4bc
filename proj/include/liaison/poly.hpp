#pragma once

// Polynomials in R_A = A[X,Y,Z,W] with A a prime field or the dual numbers.
// Terms are kept sorted by decreasing grevlex order with no zero coefficients.

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "scalars.hpp"

namespace liaison {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Term {
    Mono m;
    Scalar c;
};

class Poly {
public:
    Poly() = default;
    explicit Poly(BaseRing ring) : ring_(ring) {}

    static Poly constant(BaseRing ring, Scalar c) {
        Poly p(ring);
        if (!c.is_zero()) p.terms_.push_back({Mono{}, c});
        return p;
    }
    static Poly constant(BaseRing ring, long long c) { return constant(ring, ring.from_int(c)); }
    static Poly monomial(BaseRing ring, Mono m, Scalar c) {
        Poly p(ring);
        if (!c.is_zero()) p.terms_.push_back({m, c});
        return p;
    }
    static Poly monomial(BaseRing ring, Mono m) { return monomial(ring, m, ring.one()); }
    static Poly var(BaseRing ring, int v) { return monomial(ring, Mono::var(v)); }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    static Poly from_terms(BaseRing ring, std::vector<Term> ts) {
        std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return grevlex_cmp(a.m, b.m) > 0; });
        Poly p(ring);
        for (const Term& t : ts) {
            if (!p.terms_.empty() && p.terms_.back().m == t.m)
                p.terms_.back().c = ring.add(p.terms_.back().c, t.c);
            else
                p.terms_.push_back(t);
            if (p.terms_.back().c.is_zero()) p.terms_.pop_back();
        }
        return p;
    }

    const BaseRing& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Term& leading() const { return terms_.front(); }

    bool is_homogeneous() const {
        for (const Term& t : terms_)
            if (t.m.degree() != terms_.front().m.degree()) return false;
        return true;
    }
    /// Degree of the leading term; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.front().m.degree(); }

    /// Coefficient of m (zero if absent).
    Scalar coeff(Mono m) const {
        for (const Term& t : terms_)
            if (t.m == m) return t.c;
        return {};
    }

    Poly operator-() const {
        Poly r = *this;
        for (Term& t : r.terms_) t.c = ring_.neg(t.c);
        return r;
    }

    friend Poly operator+(const Poly& f, const Poly& g) { return combine(f, g, false); }
    friend Poly operator-(const Poly& f, const Poly& g) { return combine(f, g, true); }

    friend Poly operator*(const Poly& f, const Poly& g) {
        check_same(f, g);
        std::vector<Term> out;
        out.reserve(f.size() * g.size());
        for (const Term& a : f.terms_)
            for (const Term& b : g.terms_) {
                Scalar c = f.ring_.mul(a.c, b.c);
                if (!c.is_zero()) out.push_back({a.m * b.m, c});
            }
        return from_terms(f.ring_, std::move(out));
    }

    Poly scaled(Scalar c) const {
        Poly r(ring_);
        for (const Term& t : terms_) {
            Scalar d = ring_.mul(t.c, c);
            if (!d.is_zero()) r.terms_.push_back({t.m, d});
        }
        return r;
    }
    Poly times_mono(Mono m) const {
        Poly r = *this;
        for (Term& t : r.terms_) t.m = t.m * m;
        return r;
    }
    Poly pow(unsigned e) const {
        Poly r = constant(ring_, 1);
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    Poly& operator+=(const Poly& g) { return *this = *this + g; }
    Poly& operator-=(const Poly& g) { return *this = *this - g; }
    Poly& operator*=(const Poly& g) { return *this = *this * g; }

    friend bool operator==(const Poly& f, const Poly& g) {
        if (f.terms_.size() != g.terms_.size()) return false;
        for (std::size_t i = 0; i < f.terms_.size(); ++i)
            if (f.terms_[i].m != g.terms_[i].m || !(f.terms_[i].c == g.terms_[i].c)) return false;
        return true;
    }

    /// Pieces of fixed degree, in decreasing degree order.
    std::vector<std::pair<int, Poly>> homogeneous_components() const {
        std::map<int, std::vector<Term>, std::greater<>> by_deg;
        for (const Term& t : terms_) by_deg[t.m.degree()].push_back(t);
        std::vector<std::pair<int, Poly>> out;
        for (auto& [d, ts] : by_deg) out.emplace_back(d, from_terms(ring_, std::move(ts)));
        return out;
    }

    /// The image over the residue field (e -> 0).
    Poly fiber() const {
        BaseRing k = ring_.residue();
        Poly r(k);
        for (const Term& t : terms_)
            if (t.c.a != 0) r.terms_.push_back({t.m, {t.c.a, 0}});
        return r;
    }
    /// For f = f0 + e f1, returns f1 as a polynomial over the residue field.
    Poly epsilon_part() const {
        BaseRing k = ring_.residue();
        Poly r(k);
        for (const Term& t : terms_)
            if (t.c.b != 0) r.terms_.push_back({t.m, {t.c.b, 0}});
        return r;
    }
    /// Same coefficients read over another base ring (field -> dual is the constant family).
    Poly over(BaseRing target) const {
        Poly r(target);
        for (const Term& t : terms_) {
            Scalar c = t.c;
            if (!target.is_dual()) c.b = 0;
            if (!c.is_zero()) r.terms_.push_back({t.m, c});
        }
        return r;
    }

    /// Substitutes polynomials for the four variables.
    Poly substitute(const std::array<Poly, 4>& images) const {
        Poly r(ring_);
        for (const Term& t : terms_) {
            Poly m = constant(ring_, t.c);
            for (int v = 0; v < 4; ++v) m = m * images[v].pow(t.m.exp(v));
            r += m;
        }
        return r;
    }

    std::string to_string() const;

private:
    static void check_same(const Poly& f, const Poly& g) {
        if (!(f.ring_ == g.ring_)) throw MixedBase{};
    }
    static Poly combine(const Poly& f, const Poly& g, bool subtract) {
        check_same(f, g);
        const BaseRing& R = f.ring_;
        Poly r(R);
        r.terms_.reserve(f.size() + g.size());
        std::size_t i = 0, j = 0;
        while (i < f.size() || j < g.size()) {
            int c = i == f.size() ? -1 : j == g.size() ? 1 : grevlex_cmp(f.terms_[i].m, g.terms_[j].m);
            if (c > 0) {
                r.terms_.push_back(f.terms_[i++]);
            } else if (c < 0) {
                Scalar s = subtract ? R.neg(g.terms_[j].c) : g.terms_[j].c;
                r.terms_.push_back({g.terms_[j++].m, s});
            } else {
                Scalar s = subtract ? R.sub(f.terms_[i].c, g.terms_[j].c) : R.add(f.terms_[i].c, g.terms_[j].c);
                if (!s.is_zero()) r.terms_.push_back({f.terms_[i].m, s});
                ++i;
                ++j;
            }
        }
        return r;
    }

    BaseRing ring_{};
    std::vector<Term> terms_;
};

/// The monomials of degree n in decreasing grevlex order.
inline std::vector<Mono> monomials_of_degree(int n) {
    std::vector<Mono> out;
    if (n < 0) return out;
    for (unsigned a = 0; a <= unsigned(n); ++a)
        for (unsigned b = 0; a + b <= unsigned(n); ++b)
            for (unsigned c = 0; a + b + c <= unsigned(n); ++c)
                out.push_back(Mono::from_exps({a, b, c, unsigned(n) - a - b - c}));
    std::sort(out.begin(), out.end(), [](Mono x, Mono y) { return grevlex_cmp(x, y) > 0; });
    return out;
}

inline std::string scalar_to_string(const BaseRing& ring, Scalar c) {
    PrimeField f = ring.field();
    long long a = f.to_signed(c.a), b = f.to_signed(c.b);
    if (b == 0) return std::to_string(a);
    std::string eps = (b == 1 ? "" : b == -1 ? "-" : std::to_string(b) + "*") + std::string("e");
    if (a == 0) return eps;
    return "(" + std::to_string(a) + (b > 0 ? "+" : "") + eps + ")";
}

inline std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    PrimeField f = ring_.field();
    for (const Term& t : terms_) {
        std::string mono = t.m.is_one() ? "" : liaison::to_string(t.m);
        if (t.c.b == 0) {
            long long a = f.to_signed(t.c.a);
            if (a < 0) {
                s += '-';
                a = -a;
            } else if (!s.empty()) {
                s += '+';
            }
            if (mono.empty())
                s += std::to_string(a);
            else
                s += (a == 1 ? "" : std::to_string(a) + "*") + mono;
        } else {
            if (!s.empty()) s += '+';
            s += scalar_to_string(ring_, t.c);
            if (!mono.empty()) s += "*" + mono;
        }
    }
    return s;
}

namespace detail {

class PolyParser {
public:
    PolyParser(BaseRing ring, const std::string& text) : ring_(ring) {
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s_ += ch;
    }

    Poly parse() {
        if (s_.empty()) throw ParseError("empty polynomial");
        Poly p = expr();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("ParseError: " + what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }

    Poly expr() {
        Poly acc(ring_);
        bool first = true;
        while (true) {
            bool neg = false;
            if (peek() == '+' || peek() == '-') {
                neg = peek() == '-';
                ++pos_;
            } else if (!first) {
                break;
            }
            Poly t = term();
            acc = neg ? acc - t : acc + t;
            first = false;
            if (peek() != '+' && peek() != '-') break;
        }
        return acc;
    }

    bool starts_factor() const {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'X' || c == 'Y' || c == 'Z' ||
               c == 'W' || c == 'e';
    }

    Poly term() {
        Poly acc = factor();
        while (true) {
            if (peek() == '*') {
                ++pos_;
                acc = acc * factor();
            } else if (starts_factor()) {
                acc = acc * factor();
            } else {
                break;
            }
        }
        return acc;
    }

    Poly factor() {
        Poly base = atom();
        if (peek() == '^') {
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
            unsigned long long e = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                e = e * 10 + unsigned(s_[pos_++] - '0');
                if (e > 1000) fail("exponent too large");
            }
            base = base.pow(unsigned(e));
        }
        return base;
    }

    Poly atom() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            PrimeField f = ring_.field();
            std::uint32_t v = 0;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                v = f.add(f.mul(v, 10 % f.p), unsigned(s_[pos_++] - '0') % f.p);
            return Poly::constant(ring_, Scalar{v, 0});
        }
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return p;
        }
        if (c == 'e') {
            if (!ring_.is_dual()) fail("'e' is only allowed over the dual numbers");
            ++pos_;
            return Poly::constant(ring_, ring_.epsilon());
        }
        for (int v = 0; v < 4; ++v)
            if (c == kVarNames[v]) {
                ++pos_;
                return Poly::var(ring_, v);
            }
        fail(at_end() ? "unexpected end of input" : std::string("unexpected '") + c + "'");
    }

    BaseRing ring_;
    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(BaseRing ring, const std::string& text) { return detail::PolyParser(ring, text).parse(); }

inline Poly multiply(const Poly& f, const Poly& g) { return f * g; }

}  // namespace liaison
