#pragma once

// Liaison by complete intersections and elementary biliaisons on a surface.

#include <optional>
#include <stdexcept>
#include <string>

#include "curve.hpp"

namespace liaison {

struct LiaisonError : std::domain_error {
    enum class Kind { NotContained, NotRegularSequence, ResidualEmpty, SurfaceNotFlat, NotCoprime };
    Kind kind;
    LiaisonError(Kind k, const std::string& what) : std::domain_error(what), kind(k) {}
};

inline const char* to_string(LiaisonError::Kind k) {
    switch (k) {
    case LiaisonError::Kind::NotContained: return "NotContained";
    case LiaisonError::Kind::NotRegularSequence: return "NotRegularSequence";
    case LiaisonError::Kind::ResidualEmpty: return "ResidualEmpty";
    case LiaisonError::Kind::SurfaceNotFlat: return "SurfaceNotFlat";
    case LiaisonError::Kind::NotCoprime: return "NotCoprime";
    }
    return "?";
}

/// Complete intersection of two forms whose fibers form a regular sequence.
struct CompleteIntersection {
    Poly F, G;
    CompleteIntersection(Poly f, Poly g) : F(std::move(f)), G(std::move(g)) {
        if (!(F.ring() == G.ring())) throw MixedBase{};
        if (!F.is_homogeneous() || !G.is_homogeneous() || !is_regular_sequence(F, G))
            throw LiaisonError(LiaisonError::Kind::NotRegularSequence,
                               "(" + F.to_string() + ", " + G.to_string() + ") is not a regular sequence");
    }
    int s() const { return F.degree(); }
    int t() const { return G.degree(); }
    Ideal ideal() const { return Ideal(F.ring(), {F, G}); }
};

/// Koszul resolution 0 -> R(-s-t) -> R(-s) + R(-t) -> R of R/(F, G), exactness certified.
inline FreeResolution ci_resolution(const Poly& F, const Poly& G) {
    CompleteIntersection ci(F, G);
    const BaseRing& R = F.ring();
    FreeResolution r;
    r.maps.push_back(ci.ideal().row());
    GradedMap k(R, FreeModule({ci.s() + ci.t()}), r.maps[0].source());
    k(0, 0) = -G;
    k(1, 0) = F;
    r.maps.push_back(k);
    if (!(r.maps[0] * k).is_zero()) throw std::logic_error("Koszul complex is not a complex");
    HilbertSeries euler = free_series(R, r.module(0)) - free_series(R, r.module(1)) + free_series(R, r.module(2));
    if (!(euler == ci.ideal().quotient_series())) throw std::logic_error("Koszul complex is not exact");
    return r;
}

/// The curve linked to C by (F, G): I_C' = (F, G) : I_C.
inline CurveFamily link(const CurveFamily& C, const Poly& F, const Poly& G) {
    const Ideal& I = C.ideal();
    if (!I.contains(F) || !I.contains(G))
        throw LiaisonError(LiaisonError::Kind::NotContained, "the complete intersection does not contain the curve");
    CompleteIntersection ci(F, G);
    Ideal Jd = ci.ideal();
    if (Jd.contains(I)) throw LiaisonError(LiaisonError::Kind::ResidualEmpty, "the curve is the complete intersection");
    return validate_curve(saturate_irrelevant(ideal_quotient(Jd, I)));
}

/// I_C / (Q) as a module, generated by the generators of I_C.
inline GradedModule surface_ideal_module(const Ideal& I, const Poly& Q) {
    GradedMap row = I.row();
    GradedMap q(I.ring(), FreeModule({Q.degree()}), FreeModule({0}));
    q(0, 0) = Q;
    auto c = lift_through(row, q);
    if (!c) throw LiaisonError(LiaisonError::Kind::NotContained, "surface does not contain the curve");
    GradedMap syz = kernel(row);
    return GradedModule(syz.cols() ? syz.hcat(*c) : *c);
}

/// A move C -> C' witnessed on the surface Q by an isomorphism I_C/(Q) = (I_C'/(Q))(h).
struct BiliaisonStep {
    Ideal from, to;
    Poly Q;
    int h = 0;
    GradedMap witness;  ///< generators of I_C/(Q) -> generators of I_C'/(Q), degree -h
    int d() const { return Q.degree(); }
};

struct BiliaisonCheck {
    Decision decision = Decision::Undecided;
    std::string reason;
    std::optional<BiliaisonStep> step;
};

inline BiliaisonCheck check_elementary_biliaison(const CurveFamily& C, const CurveFamily& C2, const Poly& Q, int h,
                                                 int trials, std::uint64_t seed) {
    if (!C.ideal().contains(Q) || !C2.ideal().contains(Q))
        throw LiaisonError(LiaisonError::Kind::NotContained, "Q does not vanish on both curves");
    if (Q.fiber().is_zero()) throw LiaisonError(LiaisonError::Kind::SurfaceNotFlat, "Q vanishes on the special fiber");
    BiliaisonCheck out;
    if (C2.degree() != C.degree() + h * Q.degree()) {
        out.decision = Decision::No;
        out.reason = "degree obstruction: " + std::to_string(C2.degree()) + " != " + std::to_string(C.degree()) +
                     " + " + std::to_string(h) + "*" + std::to_string(Q.degree());
        return out;
    }
    GradedModule M = surface_ideal_module(C.ideal(), Q);
    GradedModule M2 = surface_ideal_module(C2.ideal(), Q).twisted(h);
    if (!(M.hilbert_series() == M2.hilbert_series())) {
        out.decision = Decision::No;
        out.reason = "Hilbert functions of the surface ideals differ";
        return out;
    }
    GradedMap w;
    out.decision = is_module_iso(M, M2, trials, seed, &w);
    if (out.decision == Decision::Yes)
        out.step = BiliaisonStep{C.ideal(), C2.ideal(), Q, h, w};
    else
        out.reason = out.decision == Decision::No ? "no degree-0 homomorphism" : "no isomorphism found";
    return out;
}

/// I_C' = H I_C + (Q), saturated; deg H = h >= 0 and H, Q coprime in the fiber.
inline std::pair<CurveFamily, BiliaisonStep> trivial_biliaison(const CurveFamily& C, const Poly& Q, const Poly& H,
                                                               int h, int trials = 32, std::uint64_t seed = 1) {
    if (Q.fiber().is_zero()) throw LiaisonError(LiaisonError::Kind::SurfaceNotFlat, "Q vanishes on the special fiber");
    if (!C.ideal().contains(Q))
        throw LiaisonError(LiaisonError::Kind::NotContained, "the surface does not contain the curve");
    if (h < 0 || H.is_zero() || H.degree() != h) throw std::invalid_argument("H must be a nonzero form of degree h >= 0");
    if (h > 0 && !is_regular_sequence(Q, H))
        throw LiaisonError(LiaisonError::Kind::NotCoprime, "H and Q share a factor in the fiber");
    if (h == 0 && H.fiber().is_zero()) throw LiaisonError(LiaisonError::Kind::NotCoprime, "H is not a unit");
    Ideal I2 = saturate_irrelevant(C.ideal().times(H) + Ideal(Q.ring(), {Q}));
    CurveFamily C2 = validate_curve(I2);
    BiliaisonCheck chk = check_elementary_biliaison(C, C2, Q, h, trials, seed);
    if (chk.decision != Decision::Yes) throw std::logic_error("trivial biliaison failed to verify: " + chk.reason);
    return {C2, *chk.step};
}

}  // namespace liaison
