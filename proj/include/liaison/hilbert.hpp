#pragma once

// Hilbert series of graded modules over k[X,Y,Z,W], written as N(t)/(1-t)^4
// with N a Laurent polynomial with integer coefficients.

#include <algorithm>
#include <string>
#include <vector>

#include "monomial.hpp"

namespace liaison {

class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly monomial(int exp, long long c = 1) {
        LaurentPoly p;
        p.low_ = exp;
        p.c_ = {c};
        p.normalize();
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int low() const { return low_; }
    int high() const { return low_ + int(c_.size()) - 1; }
    long long coeff(int e) const {
        if (c_.empty() || e < low_ || e > high()) return 0;
        return c_[std::size_t(e - low_)];
    }

    LaurentPoly shifted(int k) const {
        LaurentPoly r = *this;
        r.low_ += k;
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        LaurentPoly r;
        r.low_ = std::min(a.low_, b.low_);
        int hi = std::max(a.high(), b.high());
        r.c_.assign(std::size_t(hi - r.low_ + 1), 0);
        for (int e = r.low_; e <= hi; ++e) r.c_[std::size_t(e - r.low_)] = a.coeff(e) + b.coeff(e);
        r.normalize();
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        LaurentPoly r;
        r.low_ = a.low_ + b.low_;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        r.normalize();
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.c_ == b.c_ && (a.c_.empty() || a.low_ == b.low_);
    }

    /// Multiplicity of t = 1 as a root (capped at 4 for the zero polynomial).
    int order_at_one() const {
        if (is_zero()) return 4;
        std::vector<long long> c = c_;
        int k = 0;
        while (k < 4) {
            long long s = 0;
            for (auto v : c) s += v;
            if (s != 0) break;
            // divide by (1 - t): q_i = sum_{j<=i} c_j
            std::vector<long long> q(c.size() - 1);
            long long acc = 0;
            for (std::size_t i = 0; i + 1 < c.size(); ++i) q[i] = acc += c[i];
            c = q;
            ++k;
        }
        return k;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int e = low_; e <= high(); ++e) {
            long long v = coeff(e);
            if (!v) continue;
            if (!s.empty() && v > 0) s += '+';
            s += std::to_string(v) + "t^" + std::to_string(e);
        }
        return s;
    }

private:
    void normalize() {
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0) ++lead;
        if (lead == c_.size()) {
            c_.clear();
            low_ = 0;
            return;
        }
        c_.erase(c_.begin(), c_.begin() + long(lead));
        low_ += int(lead);
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    int low_ = 0;
    std::vector<long long> c_;
};

/// HS(t) = numerator / (1-t)^4.
struct HilbertSeries {
    LaurentPoly num;

    bool is_zero() const { return num.is_zero(); }
    friend bool operator==(const HilbertSeries& a, const HilbertSeries& b) { return a.num == b.num; }
    friend HilbertSeries operator+(const HilbertSeries& a, const HilbertSeries& b) { return {a.num + b.num}; }
    friend HilbertSeries operator-(const HilbertSeries& a, const HilbertSeries& b) { return {a.num - b.num}; }
    HilbertSeries shifted(int k) const { return {num.shifted(k)}; }

    /// dim M_n.
    long long value(int n) const {
        long long s = 0;
        for (int j = num.low(); j <= num.high() && j <= n; ++j) s += num.coeff(j) * graded_piece_dim(n - j);
        return s;
    }
    /// Hilbert polynomial evaluated at n (agrees with value(n) for n >= num.high() - 3).
    long long polynomial(long long n) const {
        long long s = 0;
        for (int j = num.low(); j <= num.high(); ++j) {
            long long m = n - j;
            s += num.coeff(j) * ((m + 3) * (m + 2) * (m + 1) / 6);
        }
        return s;
    }
    int dimension() const { return is_zero() ? -1 : 4 - num.order_at_one(); }
    bool finite_length() const { return dimension() <= 0; }
    /// First degree from which value() is polynomial.
    int polynomial_from() const { return num.high() - 3; }
    /// Lowest degree with a nonzero value (for nonzero series).
    int lowest_degree() const { return num.low(); }
    /// Largest degree with nonzero value; only meaningful for finite length.
    int highest_degree_finite() const {
        int d = num.high();
        while (d >= num.low() && value(d) == 0) --d;
        return d;
    }
};

namespace detail {

inline std::vector<Mono> minimalize_monomials(std::vector<Mono> gens) {
    std::sort(gens.begin(), gens.end(), [](Mono a, Mono b) { return a.degree() < b.degree(); });
    std::vector<Mono> out;
    for (Mono m : gens) {
        bool redundant = false;
        for (Mono o : out)
            if (divides(o, m)) {
                redundant = true;
                break;
            }
        if (!redundant) out.push_back(m);
    }
    return out;
}

inline LaurentPoly monomial_ideal_numerator(std::vector<Mono> gens) {
    gens = minimalize_monomials(std::move(gens));
    if (gens.empty()) return LaurentPoly::monomial(0);
    bool pairwise_coprime = true;
    for (std::size_t i = 0; i < gens.size() && pairwise_coprime; ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!coprime(gens[i], gens[j])) {
                pairwise_coprime = false;
                break;
            }
    if (pairwise_coprime) {
        LaurentPoly r = LaurentPoly::monomial(0);
        for (Mono m : gens) r = r * (LaurentPoly::monomial(0) - LaurentPoly::monomial(m.degree()));
        return r;
    }
    // Pivot on the variable occurring in the most non-linear generators.
    int best = -1, best_count = -1;
    for (int v = 0; v < 4; ++v) {
        int count = 0;
        bool is_gen = false;
        for (Mono m : gens) {
            if (m == Mono::var(v)) is_gen = true;
            if (m.exp(v) > 0) ++count;
        }
        if (!is_gen && count > best_count && count >= 2) {
            best = v;
            best_count = count;
        }
    }
    Mono p = Mono::var(best);
    std::vector<Mono> sum = gens;
    sum.push_back(p);
    std::vector<Mono> colon;
    for (Mono m : gens) colon.push_back(m.exp(best) > 0 ? m / p : m);
    return monomial_ideal_numerator(sum) + monomial_ideal_numerator(colon).shifted(1);
}

}  // namespace detail

}  // namespace liaison
