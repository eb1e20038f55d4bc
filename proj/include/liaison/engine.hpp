#pragma once

// Gröbner bases for graded submodules of free modules over k[X,Y,Z,W], k = F_p.
//
// Every graded computation in the library ends up here: ideals are rank-one
// modules, and modules over the dual numbers are handled as k[X,Y,Z,W]-modules
// with twice as many generators (see freemod.hpp).

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "hilbert.hpp"
#include "monomial.hpp"
#include "scalars.hpp"

namespace liaison {

struct FTerm {
    Mono m;
    std::uint32_t comp;
    std::uint32_t c;
};
using FVec = std::vector<FTerm>;

enum class ModOrder {
    POT,  ///< position first (lower index is larger), then grevlex; eliminates leading components
    TOP,  ///< grevlex first, then position
};

/// A graded free module sum R(-deg[i]) over k[X,Y,Z,W] with a module order.
struct FreeSpace {
    PrimeField f;
    std::vector<int> deg;
    ModOrder order = ModOrder::TOP;

    std::size_t rank() const { return deg.size(); }

    int cmp(const FTerm& a, const FTerm& b) const {
        if (order == ModOrder::POT) {
            if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
            return grevlex_cmp(a.m, b.m);
        }
        int c = grevlex_cmp(a.m, b.m);
        if (c) return c;
        if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
        return 0;
    }
    int degree(const FVec& v) const { return v.front().m.degree() + deg[v.front().comp]; }
    int term_degree(const FTerm& t) const { return t.m.degree() + deg[t.comp]; }

    void sort(FVec& v) const {
        std::sort(v.begin(), v.end(), [this](const FTerm& a, const FTerm& b) { return cmp(a, b) > 0; });
        FVec out;
        for (const FTerm& t : v) {
            if (!out.empty() && out.back().m == t.m && out.back().comp == t.comp)
                out.back().c = f.add(out.back().c, t.c);
            else
                out.push_back(t);
            if (out.back().c == 0) out.pop_back();
        }
        v.swap(out);
    }

    /// a + c * m * b
    FVec axpy(const FVec& a, std::uint32_t c, Mono m, const FVec& b) const {
        FVec r;
        r.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size()) {
                r.push_back(a[i++]);
                continue;
            }
            FTerm tb{b[j].m * m, b[j].comp, f.mul(c, b[j].c)};
            int s = i == a.size() ? -1 : cmp(a[i], tb);
            if (s > 0) {
                r.push_back(a[i++]);
            } else if (s < 0) {
                if (tb.c) r.push_back(tb);
                ++j;
            } else {
                std::uint32_t v = f.add(a[i].c, tb.c);
                if (v) r.push_back({tb.m, tb.comp, v});
                ++i;
                ++j;
            }
        }
        return r;
    }
    FVec add(const FVec& a, const FVec& b) const { return axpy(a, 1, Mono{}, b); }
    FVec sub(const FVec& a, const FVec& b) const { return axpy(a, f.neg(1), Mono{}, b); }
    FVec scale(const FVec& a, std::uint32_t c, Mono m = Mono{}) const {
        if (c == 0) return {};
        FVec r = a;
        for (FTerm& t : r) {
            t.m = t.m * m;
            t.c = f.mul(t.c, c);
        }
        return r;
    }
    void make_monic(FVec& v) const {
        if (v.empty() || v.front().c == 1) return;
        std::uint32_t inv = f.inv(v.front().c);
        for (FTerm& t : v) t.c = f.mul(t.c, inv);
    }
    /// Re-sort after changing the order or relabelling components.
    FVec resorted(FVec v) const {
        sort(v);
        return v;
    }
};

/// Gröbner basis of a homogeneous submodule, built degree by degree.
///
/// Inputs are processed in order of (degree, priority); an input that does not
/// reduce to zero against everything of lower degree and earlier inputs is a
/// minimal generator, which gives minimal generating sets for free.
class ModuleGB {
public:
    ModuleGB() = default;
    ModuleGB(FreeSpace space, std::vector<FVec> gens, std::vector<int> priority = {}) : S_(std::move(space)) {
        for (auto& g : gens) S_.sort(g);
        build(gens, priority);
    }

    const FreeSpace& space() const { return S_; }
    const std::vector<FVec>& basis() const { return G_; }
    /// Indices of inputs that were kept as minimal generators (in processing order).
    const std::vector<std::size_t>& minimal_inputs() const { return minimal_; }

    /// Normal form of v (full reduction).
    FVec reduce(FVec v) const {
        FVec done;
        while (!v.empty()) {
            const FTerm lt = v.front();
            std::size_t k = find_divisor(lt);
            if (k == npos) {
                done.push_back(lt);
                v.erase(v.begin());
                continue;
            }
            const FVec& g = G_[k];
            v = S_.axpy(v, S_.f.neg(lt.c), lt.m / g.front().m, g);
        }
        return done;
    }

    /// Reduces only leading terms; returns a vector whose lead term is irreducible (or empty).
    FVec top_reduce(FVec v) const {
        while (!v.empty()) {
            const FTerm lt = v.front();
            std::size_t k = find_divisor(lt);
            if (k == npos) break;
            const FVec& g = G_[k];
            v = S_.axpy(v, S_.f.neg(lt.c), lt.m / g.front().m, g);
        }
        return v;
    }

    bool contains(const FVec& v) const { return top_reduce(v).empty(); }

    /// Lead monomials grouped by component.
    std::vector<std::vector<Mono>> lead_monomials() const {
        std::vector<std::vector<Mono>> out(S_.rank());
        for (const FVec& g : G_) out[g.front().comp].push_back(g.front().m);
        return out;
    }

    /// Hilbert series of the quotient F / U.
    HilbertSeries quotient_series() const {
        auto leads = lead_monomials();
        LaurentPoly num;
        for (std::size_t i = 0; i < S_.rank(); ++i)
            num += detail::monomial_ideal_numerator(leads[i]).shifted(S_.deg[i]);
        return {num};
    }

    /// Monomials m e_i of total degree d not divisible by any lead term; a basis of (F/U)_d.
    std::vector<FTerm> standard_monomials(int d) const;

    static constexpr std::size_t npos = std::size_t(-1);

private:
    struct Pair {
        std::size_t i, j;
        Mono lcm;
        int degree;
    };

    std::size_t find_divisor(const FTerm& t) const {
        for (std::size_t k = 0; k < G_.size(); ++k) {
            const FTerm& l = G_[k].front();
            if (l.comp == t.comp && divides(l.m, t.m)) return k;
        }
        return npos;
    }

    FVec spoly(const Pair& p) const {
        const FVec& a = G_[p.i];
        const FVec& b = G_[p.j];
        FVec r = S_.scale(a, 1, p.lcm / a.front().m);
        return S_.axpy(r, S_.f.neg(1), p.lcm / b.front().m, b);
    }

    void add_element(FVec h, std::vector<Pair>& pairs) {
        S_.make_monic(h);
        const std::size_t hi = G_.size();
        G_.push_back(std::move(h));
        const FTerm& th = G_[hi].front();
        const bool ideal_case = S_.rank() == 1;

        // Gebauer-Möller update.
        std::vector<Pair> C;
        for (std::size_t g = 0; g < hi; ++g) {
            const FTerm& tg = G_[g].front();
            if (tg.comp != th.comp) continue;
            Mono l = lcm(th.m, tg.m);
            C.push_back({g, hi, l, l.degree() + S_.deg[th.comp]});
        }
        auto coprime_pair = [&](const Pair& p) {
            return ideal_case && coprime(G_[p.i].front().m, G_[p.j].front().m);
        };
        std::vector<Pair> D;
        for (std::size_t a = 0; a < C.size(); ++a) {
            const Pair& p = C[a];
            bool keep = coprime_pair(p);
            if (!keep) {
                keep = true;
                for (std::size_t b = a + 1; b < C.size() && keep; ++b)
                    if (divides(C[b].lcm, p.lcm)) keep = false;
                for (const Pair& q : D)
                    if (keep && divides(q.lcm, p.lcm)) keep = false;
            }
            if (keep) D.push_back(p);
        }
        std::vector<Pair> kept;
        for (const Pair& p : pairs) {
            const FTerm& t1 = G_[p.i].front();
            if (t1.comp == th.comp && divides(th.m, p.lcm) && lcm(t1.m, th.m) != p.lcm &&
                lcm(G_[p.j].front().m, th.m) != p.lcm)
                continue;
            kept.push_back(p);
        }
        for (const Pair& p : D)
            if (!coprime_pair(p)) kept.push_back(p);
        pairs.swap(kept);
    }

    void build(const std::vector<FVec>& gens, std::vector<int> priority) {
        priority.resize(gens.size(), 0);
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (!gens[i].empty()) order.push_back(i);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            int da = S_.degree(gens[a]), db = S_.degree(gens[b]);
            if (da != db) return da < db;
            return priority[a] < priority[b];
        });
        std::vector<Pair> pairs;
        std::size_t next = 0;
        while (next < order.size() || !pairs.empty()) {
            int d = next < order.size() ? S_.degree(gens[order[next]]) : 1 << 30;
            for (const Pair& p : pairs) d = std::min(d, p.degree);
            // S-pairs of degree d first.
            std::vector<Pair> now, later;
            for (const Pair& p : pairs) (p.degree == d ? now : later).push_back(p);
            pairs.swap(later);
            for (const Pair& p : now) {
                FVec r = top_reduce(spoly(p));
                if (!r.empty()) add_element(std::move(r), pairs);
            }
            while (next < order.size() && S_.degree(gens[order[next]]) == d) {
                FVec r = top_reduce(gens[order[next]]);
                if (!r.empty()) {
                    minimal_.push_back(order[next]);
                    add_element(std::move(r), pairs);
                }
                ++next;
            }
        }
        // Reduced basis.  No lead term divides another, and a lead term never
        // divides a term of its own tail, so reducing tails against all of G is safe.
        for (std::size_t k = 0; k < G_.size(); ++k) {
            FVec tail(G_[k].begin() + 1, G_[k].end());
            FVec rt = reduce(std::move(tail));
            G_[k].resize(1);
            G_[k].insert(G_[k].end(), rt.begin(), rt.end());
        }
    }

    FreeSpace S_;
    std::vector<FVec> G_;
    std::vector<std::size_t> minimal_;
};

inline std::vector<FTerm> ModuleGB::standard_monomials(int d) const {
    std::vector<FTerm> out;
    for (std::uint32_t i = 0; i < S_.rank(); ++i) {
        int md = d - S_.deg[i];
        if (md < 0) continue;
        for (unsigned a = 0; a <= unsigned(md); ++a)
            for (unsigned b = 0; a + b <= unsigned(md); ++b)
                for (unsigned c = 0; a + b + c <= unsigned(md); ++c) {
                    FTerm t{Mono::from_exps({a, b, c, unsigned(md) - a - b - c}), i, 1};
                    if (find_divisor(t) == npos) out.push_back(t);
                }
    }
    std::sort(out.begin(), out.end(), [this](const FTerm& a, const FTerm& b) { return S_.cmp(a, b) > 0; });
    return out;
}

/// Solves linear problems for a graded map given by its columns:
/// kernel generators and preimages of vectors in the image.
class MapSolver {
public:
    MapSolver(const FreeSpace& target, std::vector<FVec> cols, std::vector<int> src_deg)
        : r_(target.rank()), src_deg_(std::move(src_deg)) {
        FreeSpace big{target.f, target.deg, ModOrder::POT};
        big.deg.insert(big.deg.end(), src_deg_.begin(), src_deg_.end());
        std::vector<FVec> gens;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            FVec v = cols[j];
            v.push_back({Mono{}, std::uint32_t(r_ + j), 1});
            gens.push_back(std::move(v));
        }
        gb_ = ModuleGB(big, std::move(gens));
    }

    /// Generators of the kernel (not necessarily minimal), in source coordinates.
    std::vector<FVec> kernel() const {
        std::vector<FVec> out;
        for (const FVec& g : gb_.basis()) {
            if (g.front().comp < r_) continue;
            FVec v = g;
            for (FTerm& t : v) t.comp -= std::uint32_t(r_);
            out.push_back(std::move(v));
        }
        return out;
    }

    /// x with sum_j x_j col_j = b, if b lies in the image.
    std::optional<FVec> lift(const FVec& b) const {
        FVec v = gb_.top_reduce(b);
        if (!v.empty() && v.front().comp < r_) return std::nullopt;
        v = gb_.reduce(v);
        FVec x;
        const FreeSpace& S = gb_.space();
        for (const FTerm& t : v) x.push_back({t.m, t.comp - std::uint32_t(r_), S.f.neg(t.c)});
        return x;
    }

    FreeSpace source_space(PrimeField f, ModOrder order = ModOrder::TOP) const { return {f, src_deg_, order}; }

private:
    std::size_t r_;
    std::vector<int> src_deg_;
    ModuleGB gb_;
};

/// Picks a minimal generating subset; `aux` vectors are available for reduction
/// but never selected.  Returns indices into `gens`.
inline std::vector<std::size_t> minimal_subset(const FreeSpace& S, const std::vector<FVec>& gens,
                                               const std::vector<FVec>& aux = {}) {
    std::vector<FVec> all = aux;
    std::vector<int> prio(aux.size(), 0);
    for (const FVec& g : gens) {
        all.push_back(g);
        prio.push_back(1);
    }
    FreeSpace T = S;
    T.order = ModOrder::TOP;
    ModuleGB gb(T, all, prio);
    std::vector<std::size_t> out;
    for (std::size_t k : gb.minimal_inputs())
        if (k >= aux.size()) out.push_back(k - aux.size());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace liaison
