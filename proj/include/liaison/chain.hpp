#pragma once

// Explicit chains of elementary biliaisons between curves in one biliaison class,
// built from N-type resolutions sharing the same N.

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "raoclass.hpp"

namespace liaison {

struct ConnectError : std::domain_error {
    enum class Kind { NotEquivalent, Undecided };
    Kind kind;
    ConnectError(Kind k, const std::string& what) : std::domain_error(what), kind(k) {}
};

inline const char* to_string(ConnectError::Kind k) {
    return k == ConnectError::Kind::NotEquivalent ? "NotEquivalent" : "Undecided";
}

namespace detail {

inline Poly random_form(const BaseRing& R, int d, std::mt19937_64& rng) {
    Poly f(R);
    std::uniform_int_distribution<std::uint32_t> c(1, R.p - 1);
    for (Mono m : monomials_of_degree(d)) f += Poly::monomial(R, m, Scalar{c(rng), 0});
    return f;
}

/// Degree-0 map with general entries.
inline GradedMap random_map(const BaseRing& R, const FreeModule& src, const FreeModule& tgt, std::mt19937_64& rng) {
    GradedMap m(R, src, tgt);
    for (std::size_t i = 0; i < tgt.rank(); ++i)
        for (std::size_t j = 0; j < src.rank(); ++j) m(i, j) = random_form(R, src.twists[j] - tgt.twists[i], rng);
    return m;
}

/// 0 -> Pi -> T + L -> I_C(t) -> 0 with T = coker(rel) shared and the rows alpha to L free.
struct SplitResolution {
    GradedMap rel;    ///< relations of T
    GradedMap phi;    ///< Pi -> generators of T
    GradedMap alpha;  ///< Pi -> L

    const BaseRing& ring() const { return phi.ring(); }
    std::size_t common_rank() const { return phi.rows(); }
    std::size_t rank() const { return alpha.rows(); }
    int twist(std::size_t i) const { return alpha.target().twists[i]; }
    GradedMap full_rel() const { return rel.direct_sum(GradedMap(ring(), FreeModule{}, alpha.target())); }
    GradedMap psi() const { return phi.vcat(alpha); }

    SplitResolution with_row(std::size_t i, const GradedMap& row) const {
        SplitResolution r = *this;
        std::vector<std::size_t> before = range(0, i), after = range(i + 1, rank());
        GradedMap top = alpha.select_rows(before), bottom = alpha.select_rows(after);
        r.alpha = top.vcat(row).vcat(bottom);
        return r;
    }
    /// Moves row i of alpha into the shared part.
    SplitResolution absorb(std::size_t i) const {
        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < rank(); ++k)
            if (k != i) rest.push_back(k);
        GradedMap row = alpha.select_rows({i});
        return {rel.direct_sum(GradedMap(ring(), FreeModule{}, row.target())), phi.vcat(row), alpha.select_rows(rest)};
    }
};

/// The curve of a split resolution and the surjection onto its twisted ideal.
struct Realized {
    CurveFamily C;
    GradedMap p;  ///< generators of T + L -> R(t)
    Poly image(std::size_t row) const { return p(0, row); }
};

/// Recovers I_C from the cokernel through its unique embedding into R.
inline std::optional<Realized> realize(const SplitResolution& s) {
    const BaseRing& R = s.ring();
    GradedMap rel = s.full_rel(), psi = s.psi();
    GradedModule T(rel);
    GradedModule M(rel.cols() ? rel.hcat(psi) : psi);
    if (!(M.hilbert_series() == T.hilbert_series() - free_series(R, psi.source()))) return std::nullopt;
    GradedMap K = dual_cycles(M);
    if (K.cols() != 1) return std::nullopt;
    GradedMap p = K.transpose();
    std::vector<Poly> g;
    for (std::size_t j = 0; j < p.cols(); ++j)
        if (!p(0, j).is_zero()) g.push_back(p(0, j));
    if (g.empty()) return std::nullopt;
    Ideal J(R, g);
    int t = p.target().twists[0];
    if (!(M.hilbert_series() == GradedModule::from_ideal(J).twisted(-t).hilbert_series())) return std::nullopt;
    try {
        return Realized{validate_curve(J), p};
    } catch (const InvalidCurve&) {
        return std::nullopt;
    }
}

inline Realized must_realize(const SplitResolution& s, const char* where) {
    auto r = realize(s);
    if (!r) throw CertificationFailure(std::string(where) + ": resolution does not define a curve");
    return *r;
}

/// An elementary biliaison C -> C' on Q of height h, verified later.
struct Move {
    CurveFamily from, to;
    Poly Q;
    int h;
};

inline std::vector<Move> reversed(std::vector<Move> m) {
    std::reverse(m.begin(), m.end());
    for (Move& x : m) {
        std::swap(x.from, x.to);
        x.h = -x.h;
    }
    return m;
}

inline void append(std::vector<Move>& a, const std::vector<Move>& b) { a.insert(a.end(), b.begin(), b.end()); }

class Connector {
public:
    Connector(int max_height, std::uint64_t seed) : max_height_(max_height), rng_(seed) {}

    /// Moves from the curve of a to the curve of b; a and b share rel and phi.
    std::vector<Move> connect(const SplitResolution& a, const SplitResolution& b) {
        Realized ra = must_realize(a, "connect"), rb = must_realize(b, "connect");
        if (ra.C.ideal() == rb.C.ideal()) return {};
        if (a.rank() == 0) throw CertificationFailure("connect: no free rows left but the curves differ");
        for (std::size_t i = 0; i < a.rank(); ++i)
            for (std::size_t j = 0; j < b.rank(); ++j)
                if (a.twist(i) == b.twist(j)) return shared_twist(a, i, b, j);
        int amax = *std::max_element(a.alpha.target().twists.begin(), a.alpha.target().twists.end());
        int bmax = *std::max_element(b.alpha.target().twists.begin(), b.alpha.target().twists.end());
        if (amax > bmax) return reversed(connect(b, a));
        return lower_top_twist(a, b, rb, amax, bmax);
    }

private:
    static constexpr int kRedraws = 32;
    int max_height_;
    std::mt19937_64 rng_;

    /// Case a_i = b_j: replace both rows by one general w, then absorb w into the shared part.
    std::vector<Move> shared_twist(const SplitResolution& a, std::size_t i, const SplitResolution& b, std::size_t j) {
        const BaseRing& R = a.ring();
        FreeModule Lt({a.twist(i)});
        for (int k = 0; k < kRedraws; ++k) {
            GradedMap w = random_map(R, a.phi.source(), Lt, rng_);
            SplitResolution g = a.with_row(i, w), g2 = b.with_row(j, w);
            if (!realize(g) || !realize(g2)) continue;
            std::vector<Move> out = one_row(a, i, g);
            append(out, connect(g.absorb(i), g2.absorb(j)));
            append(out, reversed(one_row(b, j, g2)));
            return out;
        }
        throw ConnectError(ConnectError::Kind::Undecided, "no general row w defines curves on both sides");
    }

    /// Case a_r < b_r: trivial biliaison of the second curve on the image of a top generator
    /// of L', which lowers that twist to a_r.
    std::vector<Move> lower_top_twist(const SplitResolution& a, SplitResolution b, const Realized& rb, int amax,
                                      int bmax) {
        const BaseRing& R = a.ring();
        int height = bmax - amax;
        if (height > max_height_)
            throw ConnectError(ConnectError::Kind::Undecided, "required height exceeds the bound");
        std::size_t off = b.common_rank(), r = 0;
        while (b.twist(r) != bmax) ++r;
        bool any = false;
        for (std::size_t j = 0; j < b.rank(); ++j) any = any || !rb.image(off + j).fiber().is_zero();
        if (!any) throw CertificationFailure("all surface equations vanish on the special fiber");
        for (int k = 0; k < kRedraws; ++k) {
            // change of basis f_r = e_r + sum c_j e_j
            std::vector<Poly> c(b.rank(), Poly(R));
            Poly Q = rb.image(off + r);
            for (std::size_t j = 0; j < b.rank(); ++j)
                if (j != r) {
                    c[j] = random_form(R, bmax - b.twist(j), rng_);
                    Q += c[j] * rb.image(off + j);
                }
            if (Q.fiber().is_zero()) continue;
            Poly H = random_form(R, height, rng_);
            if (!is_regular_sequence(Q, H)) continue;
            SplitResolution b2 = b;
            for (std::size_t j = 0; j < b.rank(); ++j)
                if (j != r)
                    for (std::size_t col = 0; col < b.alpha.cols(); ++col)
                        b2.alpha(j, col) = b.alpha(j, col) - c[j] * b.alpha(r, col);
            GradedMap row(R, b.alpha.source(), FreeModule({amax}));
            for (std::size_t col = 0; col < b.alpha.cols(); ++col) row(0, col) = H * b.alpha(r, col);
            SplitResolution b3 = b2.with_row(r, row);
            CurveFamily C2 = trivial_biliaison(rb.C, Q, H, height).first;
            Realized r3 = must_realize(b3, "trivial biliaison");
            if (!(r3.C.ideal() == C2.ideal()))
                throw OracleMismatch("trivial biliaison: resolution and H I + (Q) give different curves");
            std::vector<Move> out = connect(a, b3);
            out.push_back(Move{C2, rb.C, Q, -height});
            return out;
        }
        throw ConnectError(ConnectError::Kind::Undecided, "no general surface and multiplier found");
    }

    /// a and g differ only in row i.
    std::vector<Move> one_row(const SplitResolution& a, std::size_t i, const SplitResolution& g) {
        Realized ra = must_realize(a, "one row"), rg = must_realize(g, "one row");
        if (ra.C.ideal() == rg.C.ideal()) return {};
        Poly Q = ra.image(a.common_rank() + i);
        if (!Q.fiber().is_zero()) return {Move{ra.C, rg.C, Q, 0}};
        return through_general_surface(a, ra, i, g, rg);
    }

    /// Extends a by a column (s, H) and a row (beta, H').
    static SplitResolution extend(const SplitResolution& a, std::size_t i, const GradedMap& s, const Poly& H,
                                  const GradedMap& beta, const Poly& H2, int b) {
        const BaseRing& R = a.ring();
        std::size_t n = a.common_rank();
        FreeModule Pi = a.phi.source() + FreeModule({b});
        GradedMap phi(R, Pi, a.phi.target());
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t col = 0; col < a.phi.cols(); ++col) phi(k, col) = a.phi(k, col);
            phi(k, a.phi.cols()) = s(k, 0);
        }
        GradedMap alpha(R, Pi, a.alpha.target() + beta.target());
        for (std::size_t k = 0; k < a.rank(); ++k) {
            for (std::size_t col = 0; col < a.alpha.cols(); ++col) alpha(k, col) = a.alpha(k, col);
            alpha(k, a.alpha.cols()) = k == i ? H : s(n + k, 0);
        }
        for (std::size_t col = 0; col < beta.cols(); ++col) alpha(a.rank(), col) = beta(0, col);
        alpha(a.rank(), beta.cols()) = H2;
        return {a.rel, phi, alpha};
    }

    /// The surface equation vanishes on the special fiber: pass through curves with an
    /// extra generator of degree b on general surfaces.
    std::vector<Move> through_general_surface(const SplitResolution& a, const Realized& ra, std::size_t i,
                                              const SplitResolution& g, const Realized& rg) {
        const BaseRing& R = a.ring();
        int t = a.twist(i);
        FreeModule Lt({t});
        std::size_t n = a.common_rank();
        FreeModule G0 = a.phi.target() + a.alpha.target();
        for (int b = t + 1; b <= t + max_height_; ++b) {
            for (int k = 0; k < kRedraws / 4; ++k) {
                GradedMap s = random_map(R, FreeModule({b}), G0, rng_);
                Poly H = random_form(R, b - t, rng_), H2 = random_form(R, b - t, rng_);
                GradedMap beta = random_map(R, a.phi.source(), Lt, rng_);
                GradedMap col = s;
                col(n + i, 0) = H;
                Poly F = (ra.p * col)(0, 0), Fg = (rg.p * col)(0, 0);
                if (F.fiber().is_zero() || Fg.fiber().is_zero()) continue;
                if (!is_regular_sequence(F, H2) || !is_regular_sequence(Fg, H2)) continue;
                GradedMap zero(R, a.phi.source(), Lt);
                auto a0 = realize(extend(a, i, s, H, zero, H2, b));
                auto a1 = realize(extend(a, i, s, H, beta, H2, b));
                auto g0 = realize(extend(g, i, s, H, zero, H2, b));
                auto g1 = realize(extend(g, i, s, H, beta, H2, b));
                if (!a0 || !a1 || !g0 || !g1) continue;
                Poly D = a1->image(n + i);
                if (D.fiber().is_zero()) continue;
                CurveFamily A0 = trivial_biliaison(ra.C, F, H2, b - t).first;
                CurveFamily B0 = trivial_biliaison(rg.C, Fg, H2, b - t).first;
                if (!(A0.ideal() == a0->C.ideal()) || !(B0.ideal() == g0->C.ideal()))
                    throw OracleMismatch("general surface: resolution and H I + (Q) give different curves");
                return {Move{ra.C, A0, F, b - t}, Move{A0, a1->C, F, 0}, Move{a1->C, g1->C, D, 0},
                        Move{g1->C, B0, Fg, 0}, Move{B0, rg.C, Fg, -(b - t)}};
            }
        }
        throw ConnectError(ConnectError::Kind::Undecided, "no general (s, H, H', beta) found within the height bound");
    }
};

}  // namespace detail

/// Shared N for both curves: N_C + L1 = N_C'(h) + L2, with phi' carried over by an explicit isomorphism.
inline std::pair<detail::SplitResolution, detail::SplitResolution> common_resolutions(const CurveFamily& C,
                                                                                      const CurveFamily& C2, int h,
                                                                                      int trials,
                                                                                      std::uint64_t seed) {
    const BaseRing& R = C.base();
    NTypeResolution n = n_type_resolution(C), n2 = n_type_resolution(C2);
    GradedModule N2h = n2.N.twisted(h);
    FreeModule L1(strip_free_summands(N2h).second), L2(strip_free_summands(n.N).second);
    GradedModule A = n.N.direct_sum(GradedModule::free(R, L1));
    GradedModule B = N2h.direct_sum(GradedModule::free(R, L2));
    GradedMap w;
    Decision iso = is_module_iso(B, A, trials, seed, &w);
    if (iso != Decision::Yes)
        throw ConnectError(iso == Decision::No ? ConnectError::Kind::NotEquivalent : ConnectError::Kind::Undecided,
                           "padded N modules are not isomorphic");
    GradedMap phiA = n.phi.direct_sum(GradedMap::identity(R, L1));
    GradedMap phiB = w * n2.phi.twisted(h).direct_sum(GradedMap::identity(R, L2));
    FreeModule P = phiA.source(), P2 = phiB.source();
    GradedMap phi = phiA.hcat(phiB);
    detail::SplitResolution a{A.presentation(), phi, GradedMap(R, P, P2).hcat(GradedMap::identity(R, P2))};
    detail::SplitResolution b{A.presentation(), phi, GradedMap::identity(R, P).hcat(GradedMap(R, P2, P))};
    return {a, b};
}

/// A verified chain of elementary biliaisons from C to C'.
inline std::vector<BiliaisonStep> connect_by_biliaisons(const CurveFamily& C, const CurveFamily& C2, int max_height,
                                                        int trials, std::uint64_t seed) {
    if (C.ideal() == C2.ideal()) return {};
    ShiftDecision eq = biliaison_equivalent(C, C2, trials, seed);
    if (eq.decision == Decision::No) throw ConnectError(ConnectError::Kind::NotEquivalent, "different biliaison classes");
    if (eq.decision == Decision::Undecided) throw ConnectError(ConnectError::Kind::Undecided, eq.detail);
    auto [a, b] = common_resolutions(C, C2, eq.h, trials, seed);
    if (!(detail::must_realize(a, "start").C.ideal() == C.ideal()) ||
        !(detail::must_realize(b, "start").C.ideal() == C2.ideal()))
        throw CertificationFailure("padded resolutions do not give the input curves");
    detail::Connector k(max_height, seed);
    std::vector<detail::Move> moves = k.connect(a, b);
    std::vector<BiliaisonStep> steps;
    std::uint64_t s = seed;
    for (const detail::Move& m : moves) {
        if (m.h == 0 && m.from.ideal() == m.to.ideal()) continue;
        BiliaisonCheck chk = check_elementary_biliaison(m.from, m.to, m.Q, m.h, trials, ++s);
        if (chk.decision == Decision::No) throw CertificationFailure("chain step rejected: " + chk.reason);
        if (chk.decision == Decision::Undecided)
            throw ConnectError(ConnectError::Kind::Undecided, "chain step not confirmed: " + chk.reason);
        steps.push_back(*chk.step);
    }
    return steps;
}

/// Applies the chain to C: each step must start where the previous ended and re-verify.
inline Ideal replay_chain(const CurveFamily& C, const std::vector<BiliaisonStep>& steps, int trials,
                          std::uint64_t seed) {
    Ideal cur = C.ideal();
    for (const BiliaisonStep& s : steps) {
        if (!(s.from == cur)) throw CertificationFailure("chain is not connected");
        BiliaisonCheck chk =
            check_elementary_biliaison(validate_curve(s.from), validate_curve(s.to), s.Q, s.h, trials, ++seed);
        if (chk.decision != Decision::Yes) throw CertificationFailure("chain step does not re-verify");
        cur = s.to;
    }
    return cur;
}

}  // namespace liaison
