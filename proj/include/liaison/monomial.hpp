#pragma once

// Monomials in X, Y, Z, W packed into one 64-bit word, 16 bits per exponent.
// Layout (high to low): X | Y | Z | W.  Multiplication is word addition.

#include <array>
#include <cstdint>
#include <string>

namespace liaison {

inline constexpr int kNumVars = 4;
inline constexpr const char* kVarNames = "XYZW";

struct Mono {
    std::uint64_t bits = 0;

    static constexpr int shift(int var) { return 16 * (3 - var); }

    static Mono var(int v, unsigned e = 1) { return Mono{std::uint64_t(e) << shift(v)}; }
    static Mono from_exps(const std::array<unsigned, 4>& e) {
        Mono m;
        for (int v = 0; v < 4; ++v) m.bits |= std::uint64_t(e[v]) << shift(v);
        return m;
    }

    unsigned exp(int v) const { return unsigned(bits >> shift(v)) & 0xffffu; }
    int degree() const {
        return int(exp(0) + exp(1) + exp(2) + exp(3));
    }
    bool is_one() const { return bits == 0; }

    friend Mono operator*(Mono a, Mono b) { return Mono{a.bits + b.bits}; }
    /// Requires divides(b, a).
    friend Mono operator/(Mono a, Mono b) { return Mono{a.bits - b.bits}; }
    friend bool operator==(Mono a, Mono b) { return a.bits == b.bits; }
    friend bool operator!=(Mono a, Mono b) { return a.bits != b.bits; }
};

inline bool divides(Mono a, Mono b) {
    for (int v = 0; v < 4; ++v)
        if (a.exp(v) > b.exp(v)) return false;
    return true;
}

inline Mono lcm(Mono a, Mono b) {
    Mono m;
    for (int v = 0; v < 4; ++v) {
        unsigned e = a.exp(v) > b.exp(v) ? a.exp(v) : b.exp(v);
        m.bits |= std::uint64_t(e) << Mono::shift(v);
    }
    return m;
}

inline Mono gcd(Mono a, Mono b) {
    Mono m;
    for (int v = 0; v < 4; ++v) {
        unsigned e = a.exp(v) < b.exp(v) ? a.exp(v) : b.exp(v);
        m.bits |= std::uint64_t(e) << Mono::shift(v);
    }
    return m;
}

inline bool coprime(Mono a, Mono b) { return gcd(a, b).is_one(); }

/// Graded reverse lexicographic comparison with X > Y > Z > W.
/// Returns >0 when a > b, <0 when a < b, 0 when equal.
inline int grevlex_cmp(Mono a, Mono b) {
    if (a.bits == b.bits) return 0;
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (int v = 3; v >= 1; --v) {
        unsigned ea = a.exp(v), eb = b.exp(v);
        if (ea != eb) return ea < eb ? 1 : -1;
    }
    return 0;
}

/// Pure lexicographic comparison with X > Y > Z > W.
inline int lex_cmp(Mono a, Mono b) {
    if (a.bits == b.bits) return 0;
    return a.bits < b.bits ? -1 : 1;
}

inline std::string to_string(Mono m) {
    std::string s;
    for (int v = 0; v < 4; ++v) {
        unsigned e = m.exp(v);
        if (e == 0) continue;
        if (!s.empty()) s += '*';
        s += kVarNames[v];
        if (e > 1) s += '^' + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

/// C(n+3, 3): the number of monomials of degree n in four variables.
inline long long graded_piece_dim(long long n) {
    if (n < 0) return 0;
    return (n + 3) * (n + 2) * (n + 1) / 6;
}

}  // namespace liaison
