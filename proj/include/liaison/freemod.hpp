#pragma once

// Graded free modules over R_A, graded maps between them, and the linear
// algebra (kernels, preimages, images) needed on top of them.
//
// Over the dual numbers every R_A-module is treated as an R_k-module with
// twice as many generators: coordinate i of a vector f0 + e f1 becomes the
// pair of components (2i, 2i+1) holding (f0, f1).  Multiplication by e sends
// (f0, f1) to (0, f0).  An R_A-submodule generated by v_1..v_m is the
// R_k-submodule generated by v_j and e v_j, so all computations reduce to the
// field engine.

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "engine.hpp"
#include "poly.hpp"

namespace liaison {

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A graded free module sum R_A(-twists[i]); generator i lives in degree twists[i].
struct FreeModule {
    std::vector<int> twists;

    FreeModule() = default;
    explicit FreeModule(std::vector<int> t) : twists(std::move(t)) {}

    std::size_t rank() const { return twists.size(); }
    /// F^v = sum R(twists[i]).
    FreeModule dual() const {
        FreeModule d = *this;
        for (int& t : d.twists) t = -t;
        return d;
    }
    /// F(k).
    FreeModule shifted(int k) const {
        FreeModule d = *this;
        for (int& t : d.twists) t -= k;
        return d;
    }
    FreeModule operator+(const FreeModule& o) const {
        FreeModule d = *this;
        d.twists.insert(d.twists.end(), o.twists.begin(), o.twists.end());
        return d;
    }
    friend bool operator==(const FreeModule&, const FreeModule&) = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < twists.size(); ++i) s += (i ? "," : "") + std::to_string(-twists[i]);
        return s + ")";
    }
};

using Column = std::vector<Poly>;

/// A degree-zero map src -> tgt; entry (i, j) is homogeneous of degree src[j] - tgt[i].
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(BaseRing ring, FreeModule src, FreeModule tgt)
        : ring_(ring), src_(std::move(src)), tgt_(std::move(tgt)) {
        m_.assign(tgt_.rank(), std::vector<Poly>(src_.rank(), Poly(ring_)));
    }
    static GradedMap identity(BaseRing ring, const FreeModule& F) {
        GradedMap I(ring, F, F);
        for (std::size_t i = 0; i < F.rank(); ++i) I.m_[i][i] = Poly::constant(ring, 1);
        return I;
    }
    /// Builds from columns; checks homogeneity.
    static GradedMap from_columns(BaseRing ring, FreeModule src, FreeModule tgt, const std::vector<Column>& cols) {
        GradedMap g(ring, std::move(src), std::move(tgt));
        if (cols.size() != g.src_.rank()) throw ShapeError("column count does not match source rank");
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != g.tgt_.rank()) throw ShapeError("column length does not match target rank");
            for (std::size_t i = 0; i < cols[j].size(); ++i) g.m_[i][j] = cols[j][i];
        }
        g.validate();
        return g;
    }

    const BaseRing& ring() const { return ring_; }
    const FreeModule& source() const { return src_; }
    const FreeModule& target() const { return tgt_; }
    std::size_t rows() const { return tgt_.rank(); }
    std::size_t cols() const { return src_.rank(); }

    const Poly& operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }
    Poly& operator()(std::size_t i, std::size_t j) { return m_[i][j]; }

    Column column(std::size_t j) const {
        Column c;
        for (std::size_t i = 0; i < rows(); ++i) c.push_back(m_[i][j]);
        return c;
    }
    std::vector<Column> columns() const {
        std::vector<Column> out;
        for (std::size_t j = 0; j < cols(); ++j) out.push_back(column(j));
        return out;
    }

    void validate() const {
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) {
                const Poly& p = m_[i][j];
                if (p.is_zero()) continue;
                if (!(p.ring() == ring_)) throw MixedBase{};
                int want = src_.twists[j] - tgt_.twists[i];
                if (!p.is_homogeneous() || p.degree() != want)
                    throw ShapeError("matrix entry " + p.to_string() + " at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") is not homogeneous of degree " + std::to_string(want));
            }
    }

    bool is_zero() const {
        for (auto& r : m_)
            for (auto& p : r)
                if (!p.is_zero()) return false;
        return true;
    }

    /// this o other
    GradedMap operator*(const GradedMap& o) const {
        if (!(o.tgt_ == src_)) throw ShapeError("composition of incompatible maps");
        GradedMap r(ring_, o.src_, tgt_);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t k = 0; k < cols(); ++k) {
                if (m_[i][k].is_zero()) continue;
                for (std::size_t j = 0; j < o.cols(); ++j)
                    if (!o.m_[k][j].is_zero()) r.m_[i][j] += m_[i][k] * o.m_[k][j];
            }
        return r;
    }
    GradedMap operator+(const GradedMap& o) const {
        if (!(o.src_ == src_) || !(o.tgt_ == tgt_)) throw ShapeError("sum of incompatible maps");
        GradedMap r = *this;
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) r.m_[i][j] += o.m_[i][j];
        return r;
    }
    GradedMap operator-() const {
        GradedMap r = *this;
        for (auto& row : r.m_)
            for (auto& p : row) p = -p;
        return r;
    }
    GradedMap operator-(const GradedMap& o) const { return *this + (-o); }

    /// The dual map tgt^v -> src^v.
    GradedMap transpose() const {
        GradedMap t(ring_, tgt_.dual(), src_.dual());
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) t.m_[j][i] = m_[i][j];
        return t;
    }
    /// Same matrix between src(k) and tgt(k).
    GradedMap twisted(int k) const {
        GradedMap t = *this;
        t.src_ = src_.shifted(k);
        t.tgt_ = tgt_.shifted(k);
        return t;
    }
    GradedMap fiber() const {
        GradedMap f(ring_.residue(), src_, tgt_);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) f.m_[i][j] = m_[i][j].fiber();
        return f;
    }
    GradedMap over(BaseRing target) const {
        GradedMap f(target, src_, tgt_);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) f.m_[i][j] = m_[i][j].over(target);
        return f;
    }
    GradedMap select_columns(const std::vector<std::size_t>& idx) const {
        FreeModule s;
        for (auto j : idx) s.twists.push_back(src_.twists[j]);
        GradedMap r(ring_, s, tgt_);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t k = 0; k < idx.size(); ++k) r.m_[i][k] = m_[i][idx[k]];
        return r;
    }
    GradedMap select_rows(const std::vector<std::size_t>& idx) const {
        FreeModule t;
        for (auto i : idx) t.twists.push_back(tgt_.twists[i]);
        GradedMap r(ring_, src_, t);
        for (std::size_t k = 0; k < idx.size(); ++k) r.m_[k] = m_[idx[k]];
        return r;
    }
    /// [this | o] : src + o.src -> tgt
    GradedMap hcat(const GradedMap& o) const {
        if (!(o.tgt_ == tgt_)) throw ShapeError("hcat of maps with different targets");
        GradedMap r(ring_, src_ + o.src_, tgt_);
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t j = 0; j < cols(); ++j) r.m_[i][j] = m_[i][j];
            for (std::size_t j = 0; j < o.cols(); ++j) r.m_[i][cols() + j] = o.m_[i][j];
        }
        return r;
    }
    /// [this ; o] : src -> tgt + o.tgt
    GradedMap vcat(const GradedMap& o) const {
        if (!(o.src_ == src_)) throw ShapeError("vcat of maps with different sources");
        GradedMap r(ring_, src_, tgt_ + o.tgt_);
        for (std::size_t i = 0; i < rows(); ++i) r.m_[i] = m_[i];
        for (std::size_t i = 0; i < o.rows(); ++i) r.m_[rows() + i] = o.m_[i];
        return r;
    }
    GradedMap direct_sum(const GradedMap& o) const {
        GradedMap r(ring_, src_ + o.src_, tgt_ + o.tgt_);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) r.m_[i][j] = m_[i][j];
        for (std::size_t i = 0; i < o.rows(); ++i)
            for (std::size_t j = 0; j < o.cols(); ++j) r.m_[rows() + i][cols() + j] = o.m_[i][j];
        return r;
    }

    /// Applies the map to a column vector.
    Column apply(const Column& x) const {
        Column y(rows(), Poly(ring_));
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j)
                if (!m_[i][j].is_zero() && !x[j].is_zero()) y[i] += m_[i][j] * x[j];
        return y;
    }

    std::string to_string() const {
        std::string s = tgt_.to_string() + " <- " + src_.to_string() + "\n";
        for (auto& row : m_) {
            s += "[";
            for (std::size_t j = 0; j < row.size(); ++j) s += (j ? ", " : "") + row[j].to_string();
            s += "]\n";
        }
        return s;
    }

    friend bool operator==(const GradedMap& a, const GradedMap& b) {
        return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.m_ == b.m_;
    }

private:
    BaseRing ring_{};
    FreeModule src_, tgt_;
    std::vector<std::vector<Poly>> m_;
};

/// Translation between R_A-vectors and vectors over the field engine.
struct Restriction {
    BaseRing ring;

    std::uint32_t factor() const { return ring.is_dual() ? 2u : 1u; }

    FreeSpace space(const FreeModule& F, ModOrder order = ModOrder::TOP) const {
        FreeSpace S{ring.field(), {}, order};
        for (int t : F.twists)
            for (std::uint32_t r = 0; r < factor(); ++r) S.deg.push_back(t);
        return S;
    }

    FVec vec(const Column& c, const FreeSpace& S) const {
        FVec v;
        for (std::size_t i = 0; i < c.size(); ++i)
            for (const Term& t : c[i].terms()) {
                if (t.c.a) v.push_back({t.m, std::uint32_t(i * factor()), t.c.a});
                if (t.c.b) v.push_back({t.m, std::uint32_t(i * factor() + 1), t.c.b});
            }
        S.sort(v);
        return v;
    }
    /// e * c, or empty over a field.
    FVec vec_eps(const Column& c, const FreeSpace& S) const {
        FVec v;
        if (!ring.is_dual()) return v;
        for (std::size_t i = 0; i < c.size(); ++i)
            for (const Term& t : c[i].terms())
                if (t.c.a) v.push_back({t.m, std::uint32_t(2 * i + 1), t.c.a});
        S.sort(v);
        return v;
    }
    Column unvec(const FVec& v, std::size_t rank) const {
        std::vector<std::vector<Term>> ts(rank);
        for (const FTerm& t : v) {
            std::size_t i = t.comp / factor();
            bool eps = t.comp % factor() == 1;
            ts[i].push_back({t.m, eps ? Scalar{0, t.c} : Scalar{t.c, 0}});
        }
        Column c;
        for (auto& x : ts) c.push_back(Poly::from_terms(ring, std::move(x)));
        return c;
    }
    /// Restricted generators of the R_A-span of the columns: v_j and e v_j.
    std::vector<FVec> span_generators(const std::vector<Column>& cols, const FreeSpace& S) const {
        std::vector<FVec> out;
        for (const Column& c : cols) {
            out.push_back(vec(c, S));
            if (ring.is_dual()) out.push_back(vec_eps(c, S));
        }
        return out;
    }
};

/// Degree of a nonzero column with respect to a target free module.
inline int column_degree(const Column& c, const FreeModule& F) {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) return c[i].degree() + F.twists[i];
    throw ShapeError("degree of a zero column");
}

inline bool is_zero_column(const Column& c) {
    for (const Poly& p : c)
        if (!p.is_zero()) return false;
    return true;
}

/// Field-engine view of the image of a map: Gröbner basis of the R_A-span of its columns.
class ImageGB {
public:
    ImageGB() = default;
    ImageGB(const BaseRing& ring, const FreeModule& target, const std::vector<Column>& cols,
            ModOrder order = ModOrder::TOP)
        : res_{ring}, target_(target) {
        FreeSpace S = res_.space(target, order);
        gb_ = ModuleGB(S, res_.span_generators(cols, S));
    }
    explicit ImageGB(const GradedMap& phi, ModOrder order = ModOrder::TOP)
        : ImageGB(phi.ring(), phi.target(), phi.columns(), order) {}

    const ModuleGB& gb() const { return gb_; }
    const Restriction& restriction() const { return res_; }
    const FreeModule& target() const { return target_; }

    bool contains(const Column& c) const { return gb_.contains(res_.vec(c, gb_.space())); }
    Column normal_form(const Column& c) const {
        return res_.unvec(gb_.reduce(res_.vec(c, gb_.space())), target_.rank());
    }
    /// k-length Hilbert series of target / image.
    HilbertSeries quotient_series() const { return gb_.quotient_series(); }

private:
    Restriction res_{};
    FreeModule target_;
    ModuleGB gb_;
};

/// Keeps a minimal generating subset of the columns of the R_A-span (zero columns dropped).
inline std::vector<std::size_t> minimal_column_subset(const BaseRing& ring, const FreeModule& target,
                                                      const std::vector<Column>& cols) {
    Restriction res{ring};
    FreeSpace S = res.space(target);
    std::vector<FVec> gens, aux;
    for (const Column& c : cols) {
        gens.push_back(res.vec(c, S));
        if (ring.is_dual()) aux.push_back(res.vec_eps(c, S));
    }
    return minimal_subset(S, gens, aux);
}

/// The map from a free module onto a minimal generating set of the span of `cols`.
inline GradedMap minimal_generators_map(const BaseRing& ring, const FreeModule& target,
                                        const std::vector<Column>& cols) {
    auto idx = minimal_column_subset(ring, target, cols);
    FreeModule src;
    std::vector<Column> chosen;
    for (auto j : idx) {
        chosen.push_back(cols[j]);
        src.twists.push_back(column_degree(cols[j], target));
    }
    return GradedMap::from_columns(ring, src, target, chosen);
}

/// Solves phi(x) = b and computes ker(phi) over R_A.
class Solver {
public:
    explicit Solver(const GradedMap& phi) : phi_(phi), res_{phi.ring()} {
        FreeSpace T = res_.space(phi.target(), ModOrder::POT);
        std::vector<FVec> cols;
        std::vector<int> src_deg;
        for (std::size_t j = 0; j < phi.cols(); ++j) {
            Column c = phi.column(j);
            cols.push_back(res_.vec(c, T));
            src_deg.push_back(phi.source().twists[j]);
            if (res_.ring.is_dual()) {
                cols.push_back(res_.vec_eps(c, T));
                src_deg.push_back(phi.source().twists[j]);
            }
        }
        target_space_ = T;
        solver_.emplace(T, cols, src_deg);
    }

    std::optional<Column> lift(const Column& b) const {
        auto x = solver_->lift(res_.vec(b, target_space_));
        if (!x) return std::nullopt;
        return res_.unvec(*x, phi_.cols());
    }

    /// Minimal generators of ker(phi), as a map K : G -> source.
    GradedMap kernel() const {
        std::vector<Column> ker;
        for (const FVec& v : solver_->kernel()) {
            Column c = res_.unvec(v, phi_.cols());
            if (!is_zero_column(c)) ker.push_back(std::move(c));
        }
        return minimal_generators_map(res_.ring, phi_.source(), ker);
    }

private:
    GradedMap phi_;
    Restriction res_;
    FreeSpace target_space_;
    std::optional<MapSolver> solver_;
};

inline GradedMap kernel(const GradedMap& phi) { return Solver(phi).kernel(); }

/// X with phi * X = B, if it exists.
inline std::optional<GradedMap> lift_through(const GradedMap& phi, const GradedMap& B) {
    if (!(phi.target() == B.target())) throw ShapeError("lift: targets differ");
    Solver s(phi);
    std::vector<Column> cols;
    for (std::size_t j = 0; j < B.cols(); ++j) {
        auto x = s.lift(B.column(j));
        if (!x) return std::nullopt;
        cols.push_back(std::move(*x));
    }
    GradedMap X = GradedMap::from_columns(phi.ring(), B.source(), phi.source(), cols);
    return X;
}

/// k-length Hilbert series of coker(phi).
inline HilbertSeries coker_series(const GradedMap& phi) { return ImageGB(phi).quotient_series(); }

/// k-length Hilbert series of a free module.
inline HilbertSeries free_series(const BaseRing& ring, const FreeModule& F) {
    LaurentPoly num;
    long long mult = ring.is_dual() ? 2 : 1;
    for (int t : F.twists) num += LaurentPoly::monomial(t, mult);
    return {num};
}

/// True when every column of B lies in the image of phi.
inline bool image_contains(const GradedMap& phi, const GradedMap& B) {
    ImageGB gb(phi);
    for (std::size_t j = 0; j < B.cols(); ++j)
        if (!gb.contains(B.column(j))) return false;
    return true;
}

}  // namespace liaison
