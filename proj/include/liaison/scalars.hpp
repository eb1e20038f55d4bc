#pragma once

/**
 * @file scalars.hpp
 * @brief Exact arithmetic in the coefficient ring A.
 *
 * A is either a prime field F_p or the dual numbers F_p[e]/(e^2).  Both are
 * local rings with residue field F_p; a scalar is a unit iff its residue is
 * nonzero.
 */

#include <cstdint>
#include <stdexcept>
#include <string>

namespace liaison {

/// Raised when a non-invertible scalar is inverted.
struct NonUnit : std::domain_error {
    NonUnit() : std::domain_error("NonUnit: scalar has zero residue") {}
};

/// Raised when two operands live over different base rings.
struct MixedBase : std::invalid_argument {
    MixedBase() : std::invalid_argument("MixedBase: operands over different base rings") {}
};

inline constexpr std::uint32_t kDefaultPrime = 32003;

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Arithmetic modulo a prime p < 2^31.
struct PrimeField {
    std::uint32_t p = kDefaultPrime;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw NonUnit{};
        return pow(a, p - 2);
    }
    /// Reduce a signed integer into [0, p).
    std::uint32_t from_int(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<std::uint32_t>(r);
    }
    /// Symmetric representative in (-p/2, p/2].
    long long to_signed(std::uint32_t a) const {
        return a > p / 2 ? static_cast<long long>(a) - p : static_cast<long long>(a);
    }
};

/// An element a + b*e of A.  For a prime-field base, b is always 0.
struct Scalar {
    std::uint32_t a = 0;
    std::uint32_t b = 0;

    bool is_zero() const { return a == 0 && b == 0; }
    friend bool operator==(const Scalar&, const Scalar&) = default;
};

/// The base ring A together with its arithmetic.
struct BaseRing {
    enum class Kind { PrimeField, DualNumbers };

    Kind kind = Kind::PrimeField;
    std::uint32_t p = kDefaultPrime;

    static BaseRing prime_field(std::uint32_t p = kDefaultPrime) {
        if (!is_prime(p) || p >= (1u << 31)) throw std::invalid_argument("modulus must be a prime below 2^31");
        return {Kind::PrimeField, p};
    }
    static BaseRing dual_numbers(std::uint32_t p = kDefaultPrime) {
        if (!is_prime(p) || p >= (1u << 31)) throw std::invalid_argument("modulus must be a prime below 2^31");
        return {Kind::DualNumbers, p};
    }

    bool is_dual() const { return kind == Kind::DualNumbers; }
    PrimeField field() const { return {p}; }
    /// The residue field k = A/m_A as a base ring.
    BaseRing residue() const { return {Kind::PrimeField, p}; }
    friend bool operator==(const BaseRing&, const BaseRing&) = default;

    Scalar zero() const { return {}; }
    Scalar one() const { return {1, 0}; }
    Scalar epsilon() const {
        if (!is_dual()) throw std::domain_error("epsilon exists only over the dual numbers");
        return {0, 1};
    }
    Scalar from_int(long long v) const { return {field().from_int(v), 0}; }
    Scalar make(long long a, long long b) const {
        if (!is_dual() && field().from_int(b) != 0) throw std::domain_error("epsilon part over a prime field");
        return {field().from_int(a), field().from_int(b)};
    }

    Scalar add(Scalar x, Scalar y) const { auto f = field(); return {f.add(x.a, y.a), f.add(x.b, y.b)}; }
    Scalar sub(Scalar x, Scalar y) const { auto f = field(); return {f.sub(x.a, y.a), f.sub(x.b, y.b)}; }
    Scalar neg(Scalar x) const { auto f = field(); return {f.neg(x.a), f.neg(x.b)}; }
    Scalar mul(Scalar x, Scalar y) const {
        auto f = field();
        // (a + b e)(c + d e) = ac + (ad + bc) e
        return {f.mul(x.a, y.a), f.add(f.mul(x.a, y.b), f.mul(x.b, y.a))};
    }
    bool is_unit(Scalar x) const { return x.a != 0; }
    /// (a + b e)^-1 = a^-1 - b a^-2 e.
    Scalar inv(Scalar x) const {
        auto f = field();
        if (x.a == 0) throw NonUnit{};
        std::uint32_t ai = f.inv(x.a);
        return {ai, f.neg(f.mul(x.b, f.mul(ai, ai)))};
    }
    /// Image in the residue field k(t) (e -> 0).
    Scalar reduce_to_fiber(Scalar x) const { return {x.a, 0}; }

    std::string describe() const {
        return std::string(is_dual() ? "dual" : "field") + " p=" + std::to_string(p);
    }
};

inline Scalar invert(const BaseRing& ring, Scalar x) { return ring.inv(x); }
inline Scalar reduce_to_fiber(const BaseRing& ring, Scalar x) { return ring.reduce_to_fiber(x); }

}  // namespace liaison
