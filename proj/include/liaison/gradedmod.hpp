#pragma once

// Finitely presented graded R_A-modules: minimal presentations, free
// resolutions, Ext, spaces of homomorphisms, free-summand stripping,
// isomorphism testing and cohomology of the associated sheaf.

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <vector>

#include "ideal.hpp"
#include "linalg.hpp"

namespace liaison {

struct NotLiftable : std::domain_error {
    NotLiftable() : std::domain_error("NotLiftable: the module is not flat over the base ring") {}
};
struct NotFiniteLength : std::domain_error {
    NotFiniteLength() : std::domain_error("NotFiniteLength") {}
};

enum class Decision { Yes, No, Undecided };

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::Yes: return "Yes";
        case Decision::No: return "No";
        default: return "Undecided";
    }
}

/// coker(presentation : F1 -> F0).
class GradedModule {
public:
    GradedModule() = default;
    explicit GradedModule(GradedMap presentation) : pres_(std::move(presentation)) {}

    static GradedModule free(BaseRing ring, const FreeModule& F) {
        return GradedModule(GradedMap(ring, FreeModule{}, F));
    }
    /// R / I.
    static GradedModule quotient_ring(const Ideal& I) { return GradedModule(I.row()); }
    /// The ideal I as a module, presented by the syzygies of its generators.
    static GradedModule from_ideal(const Ideal& I) { return GradedModule(kernel(I.row())); }

    const BaseRing& ring() const { return pres_.ring(); }
    const GradedMap& presentation() const { return pres_; }
    const FreeModule& generators() const { return pres_.target(); }
    std::size_t num_generators() const { return pres_.rows(); }

    const ImageGB& relations_gb() const {
        if (!gb_) gb_ = std::make_shared<ImageGB>(pres_);
        return *gb_;
    }
    /// k-length Hilbert series.
    HilbertSeries hilbert_series() const { return relations_gb().quotient_series(); }
    bool is_zero() const { return hilbert_series().is_zero(); }

    /// Whether an element of F0 is zero in the module.
    bool is_zero_element(const Column& v) const { return relations_gb().contains(v); }

    GradedModule fiber() const { return GradedModule(pres_.fiber()); }
    GradedModule over(BaseRing target) const { return GradedModule(pres_.over(target)); }
    /// M(k).
    GradedModule twisted(int k) const { return GradedModule(pres_.twisted(k)); }
    GradedModule direct_sum(const GradedModule& o) const { return GradedModule(pres_.direct_sum(o.pres_)); }

private:
    GradedMap pres_;
    mutable std::shared_ptr<ImageGB> gb_;
};

/// A minimal presentation with the generator-level isomorphisms to the original.
struct MinimalPresentation {
    GradedModule module;
    GradedMap to_min;    ///< F0 -> F0' (induces M -> M')
    GradedMap from_min;  ///< F0' -> F0 (induces M' -> M)
};

inline MinimalPresentation minimal_presentation(const GradedModule& M) {
    const BaseRing& R = M.ring();
    GradedMap phi = M.presentation();
    GradedMap to = GradedMap::identity(R, phi.target());
    GradedMap from = to;
    while (true) {
        std::size_t pi = 0, pj = 0;
        bool found = false;
        for (std::size_t i = 0; i < phi.rows() && !found; ++i)
            for (std::size_t j = 0; j < phi.cols() && !found; ++j) {
                const Poly& p = phi(i, j);
                if (!p.is_zero() && p.degree() == 0 && R.is_unit(p.leading().c)) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        Scalar uinv = R.inv(phi(pi, pj).leading().c);
        // e_pi = -u^-1 sum_{k != pi} phi(k, pj) e_k in the module.
        std::vector<std::size_t> keep_rows, keep_cols;
        for (std::size_t i = 0; i < phi.rows(); ++i)
            if (i != pi) keep_rows.push_back(i);
        for (std::size_t j = 0; j < phi.cols(); ++j)
            if (j != pj) keep_cols.push_back(j);
        GradedMap next = phi.select_columns(keep_cols).select_rows(keep_rows);
        for (std::size_t a = 0; a < keep_rows.size(); ++a) {
            Poly coef = phi(keep_rows[a], pj).scaled(uinv);
            if (coef.is_zero()) continue;
            for (std::size_t b = 0; b < keep_cols.size(); ++b)
                if (!phi(pi, keep_cols[b]).is_zero()) next(a, b) -= coef * phi(pi, keep_cols[b]);
        }
        // generator maps
        FreeModule newF0 = next.target();
        GradedMap step_to(R, phi.target(), newF0);
        GradedMap step_from(R, newF0, phi.target());
        for (std::size_t a = 0; a < keep_rows.size(); ++a) {
            step_to(a, keep_rows[a]) = Poly::constant(R, 1);
            step_from(keep_rows[a], a) = Poly::constant(R, 1);
            step_to(a, pi) = -phi(keep_rows[a], pj).scaled(uinv);
        }
        to = step_to * to;
        from = from * step_from;
        phi = next;
    }
    if (phi.cols() > 0) {
        auto idx = minimal_column_subset(R, phi.target(), phi.columns());
        phi = phi.select_columns(idx);
    }
    return {GradedModule(phi), to, from};
}

/// maps[i] : F_{i+1} -> F_i, with maps[0] the presentation.
struct FreeResolution {
    std::vector<GradedMap> maps;

    const FreeModule& module(std::size_t i) const {
        return i == 0 ? maps[0].target() : maps[i - 1].source();
    }
    std::size_t length() const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < maps.size(); ++i)
            if (maps[i].cols() > 0) n = i + 1;
        return n;
    }
    /// Twists of F_0, F_1, ... up to the length.
    std::vector<FreeModule> betti() const {
        std::vector<FreeModule> out;
        for (std::size_t i = 0; i <= length(); ++i) out.push_back(module(i));
        return out;
    }
};

/// Minimal free resolution (length <= 4 over a field; NotLiftable over the
/// dual numbers when the module is not flat).
inline FreeResolution free_resolution(const GradedModule& M, bool minimal = true) {
    GradedMap d0 = minimal ? minimal_presentation(M).module.presentation() : M.presentation();
    FreeResolution res;
    res.maps.push_back(d0);
    for (int i = 1; i <= 4; ++i) {
        const GradedMap& last = res.maps.back();
        if (last.cols() == 0) break;
        GradedMap K = kernel(last);
        res.maps.push_back(K);
    }
    if (res.maps.size() == 5 && res.maps.back().cols() > 0) throw NotLiftable{};
    while (res.maps.size() > 1 && res.maps.back().cols() == 0) res.maps.pop_back();
    return res;
}

/// Castelnuovo-Mumford regularity from the minimal resolution of the fiber.
inline int regularity(const GradedModule& M) {
    FreeResolution r = free_resolution(M.fiber());
    int reg = -(1 << 20);
    for (std::size_t i = 0; i <= r.length(); ++i)
        for (int t : r.module(i).twists) reg = std::max(reg, t - int(i));
    return reg;
}

/// The module generated by the columns of K modulo the span of the columns of B
/// (both maps into the same free module).  Unless minimized, the generators are
/// the columns of K.
inline GradedModule subquotient(const GradedMap& K, const GradedMap& B, bool minimize = true) {
    const BaseRing& R = K.ring();
    if (K.cols() == 0) return GradedModule(GradedMap(R, FreeModule{}, minimize ? FreeModule{} : K.source()));
    GradedMap KB = B.cols() > 0 ? K.hcat(B) : K;
    GradedMap Z = kernel(KB);
    std::vector<std::size_t> top(K.cols());
    std::iota(top.begin(), top.end(), 0);
    GradedMap rel = Z.select_rows(top);
    // drop zero columns
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < rel.cols(); ++j)
        if (!is_zero_column(rel.column(j))) nz.push_back(j);
    GradedMap P = rel.select_columns(nz);
    return minimize ? minimal_presentation(GradedModule(P)).module : GradedModule(P);
}

/// Ext^i_{R_A}(M, R_A(shift)) from a free resolution.
inline GradedModule ext_module(int i, const FreeResolution& res, int shift = 0) {
    const BaseRing& R = res.maps[0].ring();
    std::size_t len = res.length();
    if (i < 0 || std::size_t(i) > len) return GradedModule(GradedMap(R, FreeModule{}, FreeModule{}));
    FreeModule Fi = res.module(std::size_t(i)).dual().shifted(shift);
    // d_i^T : F_i^v -> F_{i+1}^v ; kernel
    GradedMap K;
    if (std::size_t(i) < res.maps.size() && res.maps[std::size_t(i)].cols() > 0)
        K = kernel(res.maps[std::size_t(i)].transpose().twisted(shift));
    else
        K = GradedMap::identity(R, Fi);
    GradedMap B = i == 0 ? GradedMap(R, FreeModule{}, Fi) : res.maps[std::size_t(i - 1)].transpose().twisted(shift);
    return subquotient(K, B);
}

inline GradedModule ext_module(int i, const GradedModule& M, int shift = 0) {
    return ext_module(i, free_resolution(M), shift);
}

/// (module pd, sheaf dp).
inline std::pair<int, int> projective_dimension(const GradedModule& M) {
    FreeResolution r = free_resolution(M);
    int pd = int(r.length());
    int dp = 0;
    for (int i = 1; i <= pd; ++i)
        if (!ext_module(i, r).hilbert_series().finite_length()) dp = i;
    return {pd, dp};
}

/// Sheaf is locally free: all Ext^i(M, R), i > 0, have finite length.
inline bool is_locally_free(const GradedModule& M) { return projective_dimension(M).second == 0; }

// ---------------------------------------------------------------------------
// Homomorphisms

/// A k-basis of Hom_{R_A}(M, N)_d.  Each element is the matrix F0_M(-d) -> F0_N
/// of images of the generators of M.
inline std::vector<GradedMap> hom_space(const GradedModule& M, const GradedModule& N, int d) {
    const BaseRing& R = M.ring();
    if (!(N.ring() == R)) throw MixedBase{};
    const ImageGB& NG = N.relations_gb();
    const ModuleGB& gb = NG.gb();
    const Restriction& res = NG.restriction();
    const FreeSpace& S = gb.space();
    const FreeModule& F0 = M.generators();
    const std::size_t m = F0.rank();

    // unknowns: for each generator j, coefficients on standard monomials of N in degree a_j + d
    std::vector<std::vector<FTerm>> basis(m);
    std::vector<std::size_t> offset(m + 1, 0);
    for (std::size_t j = 0; j < m; ++j) {
        basis[j] = gb.standard_monomials(F0.twists[j] + d);
        offset[j + 1] = offset[j] + basis[j].size();
    }
    const std::size_t nvars = offset[m];
    auto eps_term = [&](const FTerm& t) -> FVec {
        if (!R.is_dual() || t.comp % 2 == 1) return {};
        return {FTerm{t.m, t.comp + 1, t.c}};
    };

    // each relation column gives linear conditions: sum_j rho_j T(e_j) = 0 in N
    std::map<std::pair<std::uint64_t, std::uint32_t>, std::size_t> row_of;
    std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> rows;  // sparse rows
    const GradedMap& phi = M.presentation();
    for (std::size_t c = 0; c < phi.cols(); ++c) {
        row_of.clear();
        std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> local;
        for (std::size_t j = 0; j < m; ++j) {
            const Poly& rho = phi(j, c);
            if (rho.is_zero()) continue;
            for (std::size_t b = 0; b < basis[j].size(); ++b) {
                const FTerm& beta = basis[j][b];
                FVec img;
                for (const Term& t : rho.terms()) {
                    if (t.c.a) img = S.axpy(img, t.c.a, t.m, FVec{beta});
                    if (t.c.b) {
                        FVec e = eps_term(beta);
                        if (!e.empty()) img = S.axpy(img, t.c.b, t.m, e);
                    }
                }
                img = gb.reduce(img);
                for (const FTerm& t : img) {
                    auto key = std::make_pair(t.m.bits, t.comp);
                    auto it = row_of.find(key);
                    std::size_t r;
                    if (it == row_of.end()) {
                        r = local.size();
                        row_of[key] = r;
                        local.emplace_back();
                    } else {
                        r = it->second;
                    }
                    local[r].push_back({offset[j] + b, t.c});
                }
            }
        }
        for (auto& r : local) rows.push_back(std::move(r));
    }
    DenseMatrix A(rows.size(), nvars, R.field());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (auto [col, v] : rows[r]) A.at(r, col) = R.field().add(A.at(r, col), v);
    std::vector<std::vector<std::uint32_t>> sols;
    if (rows.empty()) {
        for (std::size_t v = 0; v < nvars; ++v) {
            std::vector<std::uint32_t> e(nvars, 0);
            e[v] = 1;
            sols.push_back(e);
        }
    } else {
        sols = A.nullspace();
    }

    std::vector<GradedMap> out;
    FreeModule src = F0.shifted(-d);
    for (const auto& s : sols) {
        std::vector<Column> cols;
        for (std::size_t j = 0; j < m; ++j) {
            FVec v;
            for (std::size_t b = 0; b < basis[j].size(); ++b)
                if (s[offset[j] + b]) v.push_back({basis[j][b].m, basis[j][b].comp, s[offset[j] + b]});
            S.sort(v);
            cols.push_back(res.unvec(v, N.num_generators()));
        }
        out.push_back(GradedMap::from_columns(R, src, N.generators(), cols));
    }
    return out;
}

/// Random k-linear combination of maps with the same shape.
/// Hom_{R_A}(L, N) as the cycles of Hom(F0_L, N) -> Hom(F1_L, N), written in
/// the free module over sum_j N(a_j) (a_j the generator degrees of L).
struct HomPresentation {
    GradedMap cycles;      ///< generators of Hom(L, N), lifted to sum_j G0_N(a_j)
    GradedMap boundaries;  ///< relations of sum_j N(a_j)
    GradedModule module() const { return subquotient(cycles, boundaries); }
    /// Hom(L, N) modulo the given extra elements.
    GradedModule module_mod(const GradedMap& extra) const {
        return subquotient(cycles, boundaries.cols() ? boundaries.hcat(extra) : extra);
    }
};

inline HomPresentation hom_module(const GradedModule& L, const GradedModule& N) {
    const BaseRing& R = L.ring();
    if (!(N.ring() == R)) throw MixedBase{};
    const GradedMap& phi = L.presentation();
    const GradedMap& psi = N.presentation();
    const FreeModule& G0 = N.generators();
    std::size_t a = phi.rows(), b = phi.cols(), g = G0.rank(), h = psi.cols();
    auto blocks = [&](const std::vector<int>& degs, const FreeModule& G) {
        FreeModule out;
        for (int d : degs)
            for (int t : G.twists) out.twists.push_back(t - d);
        return out;
    };
    FreeModule S = blocks(phi.target().twists, G0), T = blocks(phi.source().twists, G0);
    GradedMap Phi(R, S, T);
    for (std::size_t l = 0; l < b; ++l)
        for (std::size_t j = 0; j < a; ++j)
            if (!phi(j, l).is_zero())
                for (std::size_t r = 0; r < g; ++r) Phi(l * g + r, j * g + r) = phi(j, l);
    auto rel = [&](const std::vector<int>& degs, const FreeModule& tgt) {
        GradedMap B(R, blocks(degs, psi.source()), tgt);
        for (std::size_t j = 0; j < degs.size(); ++j)
            for (std::size_t c = 0; c < h; ++c)
                for (std::size_t r = 0; r < g; ++r) B(j * g + r, j * h + c) = psi(r, c);
        return B;
    };
    GradedMap relS = rel(phi.target().twists, S), relT = rel(phi.source().twists, T);
    GradedMap cycles;
    if (b == 0) {
        cycles = GradedMap::identity(R, S);
    } else {
        GradedMap Z = kernel(relT.cols() ? Phi.hcat(relT) : Phi);
        std::vector<std::size_t> top(S.rank());
        std::iota(top.begin(), top.end(), 0);
        GradedMap Zt = Z.select_rows(top);
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < Zt.cols(); ++j)
            if (!is_zero_column(Zt.column(j))) nz.push_back(j);
        cycles = Zt.select_columns(nz);
    }
    return {cycles, relS};
}

inline GradedMap random_combination(const std::vector<GradedMap>& basis, std::mt19937_64& rng) {
    GradedMap acc = basis.front();
    const BaseRing& R = acc.ring();
    std::uniform_int_distribution<std::uint32_t> d(1, R.p - 1);
    for (std::size_t i = 0; i < acc.rows(); ++i)
        for (std::size_t j = 0; j < acc.cols(); ++j) acc(i, j) = Poly(R);
    for (const GradedMap& b : basis) {
        Scalar c{d(rng), 0};
        for (std::size_t i = 0; i < acc.rows(); ++i)
            for (std::size_t j = 0; j < acc.cols(); ++j)
                if (!b(i, j).is_zero()) acc(i, j) += b(i, j).scaled(c);
    }
    return acc;
}

/// Whether the generator-level map T : F0_M(-d) -> F0_N induces a surjection M -> N(d).
inline bool induces_surjection(const GradedMap& T, const GradedModule& N) {
    GradedMap all = N.presentation().cols() ? N.presentation().hcat(T) : T;
    return coker_series(all).is_zero();
}

/// Monte Carlo isomorphism test (No is certain, Yes is certified by an exhibited surjection).
inline Decision is_module_iso(const GradedModule& M, const GradedModule& N, int trials, std::uint64_t seed,
                              GradedMap* witness = nullptr) {
    HilbertSeries hm = M.hilbert_series(), hn = N.hilbert_series();
    if (!(hm == hn)) return Decision::No;
    if (hm.is_zero()) return Decision::Yes;
    auto basis = hom_space(M, N, 0);
    if (basis.empty()) return Decision::No;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        GradedMap T = random_combination(basis, rng);
        if (induces_surjection(T, N)) {
            if (witness) *witness = T;
            return Decision::Yes;
        }
    }
    return Decision::Undecided;
}

/// Removes free direct summands: M = M0 + sum R(-t).  A generator e of degree a
/// spans a free summand iff some f : M -> R(-a) sends e to a unit.
inline std::pair<GradedModule, std::vector<int>> strip_free_summands(const GradedModule& M) {
    GradedModule cur = minimal_presentation(M).module;
    std::vector<int> removed;
    const BaseRing& R = M.ring();
    bool changed = true;
    while (changed) {
        changed = false;
        const FreeModule& F0 = cur.generators();
        for (std::size_t j = 0; j < F0.rank() && !changed; ++j) {
            int a = F0.twists[j];
            GradedModule target = GradedModule::free(R, FreeModule({a}));
            for (const GradedMap& f : hom_space(cur, target, 0)) {
                const Poly& v = f(0, j);
                if (v.is_zero() || !R.is_unit(v.leading().c)) continue;
                std::vector<std::size_t> rows;
                for (std::size_t i = 0; i < F0.rank(); ++i)
                    if (i != j) rows.push_back(i);
                GradedModule next(cur.presentation().select_rows(rows));
                removed.push_back(a);
                cur = minimal_presentation(next).module;
                changed = true;
                break;
            }
        }
    }
    std::sort(removed.begin(), removed.end());
    return {cur, removed};
}

// ---------------------------------------------------------------------------
// Finite-length modules as explicit linear data

/// A finite-length graded module as vector spaces with the actions of X, Y, Z, W
/// (and e over the dual numbers).
struct FiniteModule {
    BaseRing ring;
    int lo = 0;
    std::vector<int> dims;
    /// act[v][n - lo] : M_n -> M_{n+1} for v < 4; act[4][n - lo] : M_n -> M_n (e).
    std::vector<std::vector<DenseMatrix>> act;

    int hi() const { return lo + int(dims.size()) - 1; }
    int dim(int n) const { return n < lo || n > hi() ? 0 : dims[std::size_t(n - lo)]; }
    long long length() const {
        long long s = 0;
        for (int d : dims) s += d;
        return s;
    }
    bool is_zero() const { return length() == 0; }
    std::size_t num_actions() const { return act.size(); }
    /// Zero matrix placeholder outside the support.
    DenseMatrix action(std::size_t v, int n) const {
        int target = v < 4 ? n + 1 : n;
        if (n < lo || n > hi()) return DenseMatrix(std::size_t(dim(target)), std::size_t(dim(n)), ring.field());
        const DenseMatrix& A = act[v][std::size_t(n - lo)];
        return A;
    }
    /// Nonzero degrees as a map degree -> dimension.
    std::map<int, int> dims_map() const {
        std::map<int, int> m;
        for (int n = lo; n <= hi(); ++n)
            if (dim(n)) m[n] = dim(n);
        return m;
    }

    /// M(k): degree n piece is M_{n+k}.
    FiniteModule shifted(int k) const {
        FiniteModule r = *this;
        r.lo = lo - k;
        return r;
    }

    /// Graded dual: (M^v)_n = (M_{-n})^*.
    FiniteModule dual() const {
        FiniteModule r;
        r.ring = ring;
        if (dims.empty()) return r;
        r.lo = -hi();
        for (int n = r.lo; n <= -lo; ++n) r.dims.push_back(dim(-n));
        r.act.assign(act.size(), {});
        for (std::size_t v = 0; v < act.size(); ++v)
            for (int n = r.lo; n <= r.hi(); ++n) {
                if (v < 4)
                    r.act[v].push_back(action(v, -n - 1).transpose());
                else
                    r.act[v].push_back(action(v, -n).transpose());
            }
        return r;
    }
};

/// Linear data of a finite-length module.
inline FiniteModule to_finite(const GradedModule& M) {
    FiniteModule F;
    F.ring = M.ring();
    HilbertSeries hs = M.hilbert_series();
    if (!hs.finite_length()) throw NotFiniteLength{};
    if (hs.is_zero()) return F;
    const ModuleGB& gb = M.relations_gb().gb();
    const FreeSpace& S = gb.space();
    int lo = hs.lowest_degree(), hi = hs.highest_degree_finite();
    F.lo = lo;
    std::vector<std::vector<FTerm>> basis;
    std::vector<std::map<std::pair<std::uint64_t, std::uint32_t>, std::size_t>> index;
    for (int n = lo; n <= hi; ++n) {
        basis.push_back(gb.standard_monomials(n));
        F.dims.push_back(int(basis.back().size()));
        std::map<std::pair<std::uint64_t, std::uint32_t>, std::size_t> idx;
        for (std::size_t i = 0; i < basis.back().size(); ++i) idx[{basis.back()[i].m.bits, basis.back()[i].comp}] = i;
        index.push_back(std::move(idx));
    }
    std::size_t nact = M.ring().is_dual() ? 5 : 4;
    F.act.assign(nact, {});
    for (int n = lo; n <= hi; ++n) {
        std::size_t k = std::size_t(n - lo);
        for (std::size_t v = 0; v < nact; ++v) {
            int tn = v < 4 ? n + 1 : n;
            std::size_t rows = std::size_t(F.dim(tn));
            DenseMatrix A(rows, basis[k].size(), S.f);
            for (std::size_t c = 0; c < basis[k].size(); ++c) {
                const FTerm& b = basis[k][c];
                FVec img;
                if (v < 4) {
                    img = {FTerm{b.m * Mono::var(int(v)), b.comp, 1}};
                } else if (b.comp % 2 == 0) {
                    img = {FTerm{b.m, b.comp + 1, 1}};
                }
                if (img.empty() || rows == 0) continue;
                img = gb.reduce(img);
                const auto& idx = index[std::size_t(tn - lo)];
                for (const FTerm& t : img) A.at(idx.at({t.m.bits, t.comp}), c) = t.c;
            }
            F.act[v].push_back(A);
        }
    }
    return F;
}

inline FiniteModule graded_dual_finite_length(const GradedModule& M) { return to_finite(M).dual(); }

/// Isomorphism test for finite-length modules: solve T_{n+1} A_M = A_N T_n and
/// look for an invertible solution.
inline Decision is_finite_iso(const FiniteModule& M, const FiniteModule& N, int trials, std::uint64_t seed) {
    if (M.dims_map() != N.dims_map()) return Decision::No;
    if (M.is_zero()) return Decision::Yes;
    if (M.num_actions() != N.num_actions()) return Decision::No;
    const PrimeField f = M.ring.field();
    int lo = std::min(M.lo, N.lo), hi = std::max(M.hi(), N.hi());
    std::vector<std::size_t> off;
    std::size_t nvars = 0;
    for (int n = lo; n <= hi; ++n) {
        off.push_back(nvars);
        nvars += std::size_t(N.dim(n) * M.dim(n));
    }
    auto var = [&](int n, int r, int c) { return off[std::size_t(n - lo)] + std::size_t(r * M.dim(n) + c); };
    DenseMatrix A(0, nvars, f);
    for (std::size_t v = 0; v < M.num_actions(); ++v)
        for (int n = lo; n <= hi; ++n) {
            int tn = v < 4 ? n + 1 : n;
            if (tn > hi) continue;
            DenseMatrix am = M.action(v, n), an = N.action(v, n);
            // (T_tn * am - an * T_n)[r][c] = 0
            for (int r = 0; r < N.dim(tn); ++r)
                for (int c = 0; c < M.dim(n); ++c) {
                    std::vector<std::uint32_t> row(nvars, 0);
                    for (int k = 0; k < M.dim(tn); ++k)
                        if (am.at(std::size_t(k), std::size_t(c)))
                            row[var(tn, r, k)] = f.add(row[var(tn, r, k)], am.at(std::size_t(k), std::size_t(c)));
                    for (int k = 0; k < N.dim(n); ++k)
                        if (an.at(std::size_t(r), std::size_t(k)))
                            row[var(n, k, c)] = f.sub(row[var(n, k, c)], an.at(std::size_t(r), std::size_t(k)));
                    A.append_row(row);
                }
        }
    std::vector<std::vector<std::uint32_t>> sols;
    if (A.rows() == 0) {
        for (std::size_t i = 0; i < nvars; ++i) {
            std::vector<std::uint32_t> e(nvars, 0);
            e[i] = 1;
            sols.push_back(e);
        }
    } else {
        sols = A.nullspace();
    }
    if (sols.empty()) return Decision::No;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> d(0, f.p - 1);
    for (int t = 0; t < trials; ++t) {
        std::vector<std::uint32_t> x(nvars, 0);
        for (const auto& s : sols) {
            std::uint32_t c = d(rng);
            for (std::size_t i = 0; i < nvars; ++i)
                if (s[i]) x[i] = f.add(x[i], f.mul(c, s[i]));
        }
        bool ok = true;
        for (int n = lo; n <= hi && ok; ++n) {
            int dn = M.dim(n);
            if (dn == 0) continue;
            DenseMatrix T{std::size_t(dn), std::size_t(dn), f};
            for (int r = 0; r < dn; ++r)
                for (int c = 0; c < dn; ++c) T.at(std::size_t(r), std::size_t(c)) = x[var(n, r, c)];
            ok = T.rank() == std::size_t(dn);
        }
        if (ok) return Decision::Yes;
    }
    return Decision::Undecided;
}

// ---------------------------------------------------------------------------
// Cohomology of the associated sheaf

struct CohomologyRow {
    int n;
    long long h[4];
};

/// Test module for the functorial cohomology: Q = A (the module itself) or Q = k (its fiber).
enum class TestModule { A, K };

/// dim H^i(M~ (x) Q (n)) via Ext and local duality:
/// H^i(M~(n)) = Ext^{3-i}(M, R(-4))_{-n}^*, i >= 1, and
/// H^0(M~(n)) = M_n - Ext^4(M, R(-4))_{-n} + Ext^3(M, R(-4))_{-n}.
inline std::vector<CohomologyRow> cohomology_table(const GradedModule& M, TestModule Q, int n_lo, int n_hi) {
    GradedModule Mq = (Q == TestModule::K && M.ring().is_dual()) ? M.fiber() : M;
    FreeResolution res = free_resolution(Mq);
    HilbertSeries ext[5];
    for (int i = 0; i <= 4; ++i) ext[i] = ext_module(i, res, -4).hilbert_series();
    HilbertSeries hm = Mq.hilbert_series();
    std::vector<CohomologyRow> out;
    for (int n = n_lo; n <= n_hi; ++n) {
        CohomologyRow r{n, {0, 0, 0, 0}};
        r.h[0] = hm.value(n) - ext[4].value(-n) + ext[3].value(-n);
        for (int i = 1; i <= 3; ++i) r.h[i] = ext[3 - i].value(-n);
        out.push_back(r);
    }
    return out;
}

/// The power (X,Y,Z,W)^k as a module (presented by its syzygies).
inline GradedModule irrelevant_power(BaseRing ring, int k) {
    std::vector<Poly> g;
    for (Mono m : monomials_of_degree(k)) g.push_back(Poly::monomial(ring, m));
    return GradedModule::from_ideal(Ideal(ring, g));
}

/// dim H^0(M~(n)) computed as dim Hom(m^k, M)_n with k increased until stable.
inline std::vector<long long> h0_by_saturation(const GradedModule& M, int n_lo, int n_hi, int max_power = 8) {
    std::vector<long long> prev;
    for (int k = 1; k <= max_power; ++k) {
        GradedModule mk = irrelevant_power(M.ring(), k);
        std::vector<long long> cur;
        for (int n = n_lo; n <= n_hi; ++n) cur.push_back(long(hom_space(mk, M, n).size()));
        if (cur == prev) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace liaison
