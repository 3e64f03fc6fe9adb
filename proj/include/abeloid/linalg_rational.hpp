#pragma once

#include "matrix.hpp"
#include "numutil.hpp"
#include "quad.hpp"

namespace abeloid {

using RatMat = Matrix<Rational>;
using QuadMat = Matrix<Quad>;

// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(RatMat &m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && m.at(pr, col) == 0) ++pr;
        if (pr == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(pr, j));
        Rational inv = 1 / m.at(row, col);
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Rational f = m.at(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(RatMat m) { return rref(m).size(); }

// Basis of the right kernel {x : m x = 0}, one vector per column.
inline std::vector<std::vector<Rational>> kernel_basis(RatMat m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rational det(RatMat m) {
    if (m.rows() != m.cols()) fail(errc::dimension_mismatch, "det of non-square matrix");
    Rational d = 1;
    for (std::size_t col = 0; col < m.cols(); ++col) {
        std::size_t pr = col;
        while (pr < m.rows() && m.at(pr, col) == 0) ++pr;
        if (pr == m.rows()) return Rational(0);
        if (pr != col) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(col, j), m.at(pr, j));
            d = -d;
        }
        d *= m.at(col, col);
        Rational inv = 1 / m.at(col, col);
        for (std::size_t i = col + 1; i < m.rows(); ++i) {
            if (m.at(i, col) == 0) continue;
            Rational f = m.at(i, col) * inv;
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

inline RatMat rat_inverse(const RatMat &m) {
    if (m.rows() != m.cols()) fail(errc::dimension_mismatch, "inverse of non-square matrix");
    std::size_t n = m.rows();
    RatMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto pivots = rref(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        fail(errc::singular_ord, "matrix is singular");
    RatMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

// Split a Q(sqrt(d))-matrix into its rational and surd component matrices.
inline std::pair<RatMat, RatMat> quad_components(const QuadMat &m) {
    RatMat a(m.rows(), m.cols()), b(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            a.at(i, j) = m.at(i, j).rat();
            b.at(i, j) = m.at(i, j).surd();
        }
    return {a, b};
}

// Row space basis (reduced echelon rows, zero rows dropped).
inline std::vector<std::vector<Rational>> row_space(RatMat m) {
    auto pivots = rref(m);
    std::vector<std::vector<Rational>> rows;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        std::vector<Rational> v(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m.at(r, j);
        rows.push_back(std::move(v));
    }
    return rows;
}

} // namespace abeloid
