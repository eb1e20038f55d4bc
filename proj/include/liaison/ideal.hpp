#pragma once

// Homogeneous ideals of R_A with membership, colon ideals, saturation and
// intersections.  All operations reduce to kernels of graded maps.

#include <memory>
#include <string>
#include <vector>

#include "freemod.hpp"

namespace liaison {

class Ideal {
public:
    Ideal() = default;
    Ideal(BaseRing ring, std::vector<Poly> gens) : ring_(ring) {
        for (Poly& g : gens) {
            if (g.is_zero()) continue;
            if (!(g.ring() == ring_)) throw MixedBase{};
            if (!g.is_homogeneous()) throw ShapeError("generator " + g.to_string() + " is not homogeneous");
            gens_.push_back(std::move(g));
        }
    }
    static Ideal unit(BaseRing ring) { return Ideal(ring, {Poly::constant(ring, 1)}); }
    static Ideal maximal(BaseRing ring) {
        std::vector<Poly> g;
        for (int v = 0; v < 4; ++v) g.push_back(Poly::var(ring, v));
        return Ideal(ring, g);
    }

    const BaseRing& ring() const { return ring_; }
    const std::vector<Poly>& gens() const { return gens_; }
    bool is_zero() const { return gens_.empty(); }

    /// The generators as a map sum R(-deg g) -> R.
    GradedMap row() const {
        FreeModule src;
        for (const Poly& g : gens_) src.twists.push_back(g.degree());
        GradedMap m(ring_, src, FreeModule({0}));
        for (std::size_t j = 0; j < gens_.size(); ++j) m(0, j) = gens_[j];
        return m;
    }

    const ImageGB& gb() const {
        if (!gb_) gb_ = std::make_shared<ImageGB>(row());
        return *gb_;
    }

    bool contains(const Poly& f) const { return f.is_zero() || gb().contains({f}); }
    bool contains(const Ideal& J) const {
        for (const Poly& g : J.gens_)
            if (!contains(g)) return false;
        return true;
    }
    Poly normal_form(const Poly& f) const { return gb().normal_form({f})[0]; }

    /// k-length Hilbert series of R_A / I.
    HilbertSeries quotient_series() const { return gb().quotient_series(); }

    Ideal fiber() const {
        std::vector<Poly> g;
        for (const Poly& p : gens_) g.push_back(p.fiber());
        return Ideal(ring_.residue(), g);
    }
    Ideal over(BaseRing target) const {
        std::vector<Poly> g;
        for (const Poly& p : gens_) g.push_back(p.over(target));
        return Ideal(target, g);
    }

    /// Reduced Gröbner basis of the fiber ideal, as polynomials.
    std::vector<Poly> groebner_basis() const {
        Ideal f = fiber();
        std::vector<Poly> out;
        for (const FVec& v : f.gb().gb().basis()) out.push_back(f.gb().restriction().unvec(v, 1)[0]);
        return out;
    }

    /// dim_k (R_k / I_k)_n for n = 0..n_max, I_k the fiber ideal.
    std::vector<long long> hilbert_function(int n_max) const {
        HilbertSeries hs = fiber().quotient_series();
        std::vector<long long> out;
        for (int n = 0; n <= n_max; ++n) out.push_back(hs.value(n));
        return out;
    }

    /// Krull dimension of R_k / I_k.
    int krull_dimension() const {
        HilbertSeries hs = fiber().quotient_series();
        return hs.is_zero() ? -1 : hs.dimension();
    }

    Ideal operator+(const Ideal& J) const {
        std::vector<Poly> g = gens_;
        g.insert(g.end(), J.gens_.begin(), J.gens_.end());
        return Ideal(ring_, g);
    }
    Ideal operator*(const Ideal& J) const {
        std::vector<Poly> g;
        for (const Poly& a : gens_)
            for (const Poly& b : J.gens_) g.push_back(a * b);
        return Ideal(ring_, g).minimalized();
    }
    Ideal times(const Poly& h) const {
        std::vector<Poly> g;
        for (const Poly& a : gens_) g.push_back(a * h);
        return Ideal(ring_, g);
    }

    /// Same ideal with a minimal set of generators.
    Ideal minimalized() const {
        if (gens_.empty()) return *this;
        auto idx = minimal_column_subset(ring_, FreeModule({0}), columns());
        std::vector<Poly> g;
        for (auto i : idx) g.push_back(gens_[i]);
        return Ideal(ring_, g);
    }

    friend bool operator==(const Ideal& I, const Ideal& J) {
        return I.ring_ == J.ring_ && I.contains(J) && J.contains(I);
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
        return s + ")";
    }

private:
    std::vector<Column> columns() const {
        std::vector<Column> c;
        for (const Poly& g : gens_) c.push_back({g});
        return c;
    }

    BaseRing ring_{};
    std::vector<Poly> gens_;
    mutable std::shared_ptr<ImageGB> gb_;
};

/// I : J = {f : f J in I}.
inline Ideal ideal_quotient(const Ideal& I, const Ideal& J) {
    if (!(I.ring() == J.ring())) throw MixedBase{};
    const BaseRing& R = I.ring();
    if (J.is_zero()) return Ideal::unit(R);
    const auto& g = J.gens();
    const auto& f = I.gens();
    std::size_t m = g.size();
    // x -> (x g_1, ..., x g_m) modulo I in each slot.
    FreeModule tgt, src({0});
    for (const Poly& gk : g) tgt.twists.push_back(-gk.degree());
    for (std::size_t k = 0; k < m; ++k)
        for (const Poly& fl : f) src.twists.push_back(fl.degree() - g[k].degree());
    GradedMap phi(R, src, tgt);
    for (std::size_t k = 0; k < m; ++k) phi(k, 0) = g[k];
    std::size_t col = 1;
    for (std::size_t k = 0; k < m; ++k)
        for (const Poly& fl : f) phi(k, col++) = fl;
    GradedMap K = kernel(phi);
    std::vector<Poly> out;
    for (std::size_t j = 0; j < K.cols(); ++j)
        if (!K(0, j).is_zero()) out.push_back(K(0, j));
    return Ideal(R, out).minimalized();
}

inline Ideal ideal_quotient(const Ideal& I, const Poly& f) { return ideal_quotient(I, Ideal(I.ring(), {f})); }

inline Ideal intersect(const Ideal& I, const Ideal& J) {
    if (!(I.ring() == J.ring())) throw MixedBase{};
    const BaseRing& R = I.ring();
    // Kernel of R -> R/I + R/J.
    FreeModule src({0});
    for (const Poly& f : I.gens()) src.twists.push_back(f.degree());
    for (const Poly& g : J.gens()) src.twists.push_back(g.degree());
    GradedMap phi(R, src, FreeModule({0, 0}));
    phi(0, 0) = Poly::constant(R, 1);
    phi(1, 0) = Poly::constant(R, 1);
    std::size_t col = 1;
    for (const Poly& f : I.gens()) phi(0, col++) = f;
    for (const Poly& g : J.gens()) phi(1, col++) = g;
    GradedMap K = kernel(phi);
    std::vector<Poly> out;
    for (std::size_t j = 0; j < K.cols(); ++j)
        if (!K(0, j).is_zero()) out.push_back(K(0, j));
    return Ideal(R, out).minimalized();
}

/// I : (X,Y,Z,W)^infinity.
inline Ideal saturate_irrelevant(const Ideal& I) {
    Ideal m = Ideal::maximal(I.ring());
    Ideal cur = I;
    HilbertSeries hs = cur.quotient_series();
    while (true) {
        Ideal next = ideal_quotient(cur, m);
        HilbertSeries nhs = next.quotient_series();
        if (nhs == hs) return cur;
        cur = next;
        hs = nhs;
    }
}

inline bool is_saturated(const Ideal& I) {
    return ideal_quotient(I, Ideal::maximal(I.ring())).quotient_series() == I.quotient_series();
}

/// Fiber forms F, G form a regular sequence (the fiber of R/(F,G) has dimension 2).
inline bool is_regular_sequence(const Poly& F, const Poly& G) {
    Poly f = F.fiber(), g = G.fiber();
    if (f.is_zero() || g.is_zero()) return false;
    return Ideal(f.ring(), {f, g}).krull_dimension() == 2;
}

/// Every graded piece of R_A/I is free over A, checked for n <= n_max.
inline bool is_flat_family(const Ideal& I, int n_max) {
    if (!I.ring().is_dual()) return true;
    HilbertSeries total = I.quotient_series();
    HilbertSeries fib = I.fiber().quotient_series();
    for (int n = 0; n <= n_max; ++n)
        if (total.value(n) != 2 * fib.value(n)) return false;
    return true;
}

/// Flatness in every degree (compares full Hilbert series).
inline bool is_flat_family(const Ideal& I) {
    if (!I.ring().is_dual()) return true;
    return I.quotient_series().num == I.fiber().quotient_series().num + I.fiber().quotient_series().num;
}

}  // namespace liaison
