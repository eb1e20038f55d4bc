#pragma once

// Dense linear algebra over F_p: row reduction, rank, null spaces, solving.

#include <cstdint>
#include <optional>
#include <vector>

#include "scalars.hpp"

namespace liaison {

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, PrimeField f)
        : rows_(rows), cols_(cols), f_(f), a_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const PrimeField& field() const { return f_; }

    std::uint32_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    void append_row(const std::vector<std::uint32_t>& row) {
        a_.insert(a_.end(), row.begin(), row.end());
        ++rows_;
    }

    /// Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = r;
            while (piv < rows_ && at(piv, c) == 0) ++piv;
            if (piv == rows_) continue;
            swap_rows(piv, r);
            std::uint32_t inv = f_.inv(at(r, c));
            for (std::size_t j = c; j < cols_; ++j) at(r, j) = f_.mul(at(r, j), inv);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || at(i, c) == 0) continue;
                std::uint32_t m = f_.neg(at(i, c));
                for (std::size_t j = c; j < cols_; ++j)
                    if (at(r, j)) at(i, j) = f_.add(at(i, j), f_.mul(m, at(r, j)));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        DenseMatrix m = *this;
        return m.rref().size();
    }

    /// Basis of {x : M x = 0}, one vector per free column.
    std::vector<std::vector<std::uint32_t>> nullspace() const {
        DenseMatrix m = *this;
        auto piv = m.rref();
        std::vector<bool> is_piv(cols_, false);
        for (auto c : piv) is_piv[c] = true;
        std::vector<std::vector<std::uint32_t>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_piv[free]) continue;
            std::vector<std::uint32_t> v(cols_, 0);
            v[free] = 1;
            for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f_.neg(m.at(r, free));
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// Some x with M x = b, if one exists.
    std::optional<std::vector<std::uint32_t>> solve(const std::vector<std::uint32_t>& b) const {
        DenseMatrix aug(rows_, cols_ + 1, f_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        auto piv = aug.rref();
        if (!piv.empty() && piv.back() == cols_) return std::nullopt;
        std::vector<std::uint32_t> x(cols_, 0);
        for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(r, cols_);
        return x;
    }

    std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& x) const {
        std::vector<std::uint32_t> y(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) && x[j]) y[i] = f_.add(y[i], f_.mul(at(i, j), x[j]));
        return y;
    }

    DenseMatrix operator*(const DenseMatrix& o) const {
        DenseMatrix r(rows_, o.cols_, f_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                std::uint32_t a = at(i, k);
                if (!a) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    if (o.at(k, j)) r.at(i, j) = f_.add(r.at(i, j), f_.mul(a, o.at(k, j)));
            }
        return r;
    }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_, f_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    bool is_zero() const {
        for (auto v : a_)
            if (v) return false;
        return true;
    }

    friend bool operator==(const DenseMatrix& x, const DenseMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

    std::size_t rows_ = 0, cols_ = 0;
    PrimeField f_{};
    std::vector<std::uint32_t> a_;
};

}  // namespace liaison
