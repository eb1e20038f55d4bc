#pragma once

// Curves (and flat families of curves over the dual numbers) in P^3, given by
// saturated ideals, with degree, genus and the Rao module.

#include <memory>
#include <stdexcept>
#include <string>

#include "gradedmod.hpp"

namespace liaison {

struct InvalidCurve : std::domain_error {
    enum class Reason { NotSaturated, WrongDimension, NotPureDimensionOrNotLCM, NotFlat };
    Reason reason;
    InvalidCurve(Reason r, const std::string& what) : std::domain_error(what), reason(r) {}
};

inline const char* to_string(InvalidCurve::Reason r) {
    switch (r) {
    case InvalidCurve::Reason::NotSaturated: return "NotSaturated";
    case InvalidCurve::Reason::WrongDimension: return "WrongDimension";
    case InvalidCurve::Reason::NotPureDimensionOrNotLCM: return "NotPureDimensionOrNotLCM";
    case InvalidCurve::Reason::NotFlat: return "NotFlat";
    }
    return "?";
}

/// Two independent computations disagreed.  Always a bug.
struct OracleMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

/// M_C as a finite-length module: dimensions over k and the variable actions.
using RaoModule = FiniteModule;

/// Action matrices commute in every degree.
inline bool actions_commute(const FiniteModule& M) {
    for (int n = M.lo; n <= M.hi(); ++n)
        for (std::size_t u = 0; u < M.num_actions(); ++u)
            for (std::size_t v = u + 1; v < M.num_actions(); ++v) {
                int nu = u < 4 ? n + 1 : n, nv = v < 4 ? n + 1 : n;
                if (!(M.action(v, nu) * M.action(u, n) == M.action(u, nv) * M.action(v, n))) return false;
            }
    return true;
}

/// Rao module by saturation: Hom((X^k,Y^k,Z^k,W^k), R/I) / (R/I), k increased until stable.
inline GradedModule rao_by_saturation(const Ideal& I, int max_power = 12) {
    const BaseRing& R = I.ring();
    GradedModule Q = GradedModule::quotient_ring(I);
    HilbertSeries prev;
    bool have = false;
    GradedModule cur;
    for (int k = 1; k <= max_power; ++k) {
        std::vector<Poly> pw;
        for (int v = 0; v < 4; ++v) pw.push_back(Poly::var(R, v).pow(k));
        GradedModule L = GradedModule::from_ideal(Ideal(R, pw));
        HomPresentation H = hom_module(L, Q);
        // the class of 1 in R/I, i.e. the inclusion map
        GradedMap one(R, FreeModule({0}), H.cycles.target());
        for (std::size_t j = 0; j < 4; ++j) one(j, 0) = pw[j];
        GradedModule M = H.module_mod(one);
        HilbertSeries hs = M.hilbert_series();
        if (have && hs == prev) return cur;
        have = true;
        prev = hs;
        cur = M;
    }
    throw NotFiniteLength{};
}

/// Rao module by duality: the graded dual of Ext^3(R/I, R(-4)).
inline FiniteModule rao_by_duality(const Ideal& I) {
    return to_finite(ext_module(3, GradedModule::quotient_ring(I), -4)).dual();
}

class CurveFamily {
public:
    const Ideal& ideal() const { return ideal_; }
    const BaseRing& base() const { return ideal_.ring(); }
    int degree() const { return degree_; }
    int genus() const { return genus_; }
    /// Castelnuovo-Mumford regularity of I_C (fiber).
    int regularity() const { return regularity_; }

    /// M_C, checked against both routes on first use.
    const RaoModule& rao() const {
        if (!rao_) {
            FiniteModule a = to_finite(rao_by_saturation(ideal_));
            FiniteModule b = rao_by_duality(ideal_);
            if (a.dims_map() != b.dims_map())
                throw OracleMismatch("Rao module dimensions differ between saturation and duality routes");
            if (!a.is_zero() && is_finite_iso(a, b, 32, 0x5eed) != Decision::Yes)
                throw OracleMismatch("Rao module structures differ between saturation and duality routes");
            if (!actions_commute(a)) throw OracleMismatch("Rao module actions do not commute");
            rao_ = std::make_shared<RaoModule>(std::move(a));
        }
        return *rao_;
    }

    bool is_acm() const { return rao().is_zero(); }

    friend CurveFamily validate_curve(const Ideal& I);

private:
    Ideal ideal_;
    int degree_ = 0, genus_ = 0, regularity_ = 0;
    mutable std::shared_ptr<RaoModule> rao_;
};

/// (d, g) from the Hilbert polynomial P(n) = d n + 1 - g of the fiber.
inline std::pair<int, int> degree_genus_of(const Ideal& I) {
    HilbertSeries hs = I.fiber().quotient_series();
    long long p0 = hs.polynomial(0), p1 = hs.polynomial(1);
    return {int(p1 - p0), int(1 - p0)};
}

inline CurveFamily validate_curve(const Ideal& I) {
    using R = InvalidCurve::Reason;
    if (!is_saturated(I)) throw InvalidCurve(R::NotSaturated, "ideal is not saturated");
    if (I.ring().is_dual() && !is_flat_family(I)) throw InvalidCurve(R::NotFlat, "family is not flat over the base");
    if (I.krull_dimension() != 2)
        throw InvalidCurve(R::WrongDimension,
                           "R/I has Krull dimension " + std::to_string(I.krull_dimension()) + ", expected 2");
    GradedModule Q = GradedModule::quotient_ring(I);
    FreeResolution res = free_resolution(Q);
    if (!ext_module(3, res).hilbert_series().finite_length())
        throw InvalidCurve(R::NotPureDimensionOrNotLCM, "Ext^3(R/I, R) has positive dimension");
    CurveFamily C;
    C.ideal_ = I;
    auto [d, g] = degree_genus_of(I);
    C.degree_ = d;
    C.genus_ = g;
    C.regularity_ = regularity(Q.fiber()) + 1;
    return C;
}

inline std::pair<int, int> degree_genus(const CurveFamily& C) { return {C.degree(), C.genus()}; }

inline const RaoModule& rao_module(const CurveFamily& C) { return C.rao(); }

/// The special fiber, re-saturated and re-validated.
inline CurveFamily fiber(const CurveFamily& C) { return validate_curve(saturate_irrelevant(C.ideal().fiber())); }

}  // namespace liaison
