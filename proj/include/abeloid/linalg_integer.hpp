#pragma once

#include "linalg_rational.hpp"

namespace abeloid {

using IntMat = Matrix<Int>;

inline RatMat to_rational(const IntMat &m) {
    RatMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = Rational(m.at(i, j));
    return r;
}

inline Int int_det(const IntMat &m) {
    Rational d = det(to_rational(m));
    if (den(d) != 1) fail(errc::internal, "integer determinant not integral");
    return num(d);
}

inline bool is_unimodular(const IntMat &m) {
    if (m.rows() != m.cols()) return false;
    Int d = int_det(m);
    return d == 1 || d == -1;
}

struct HermiteResult {
    IntMat H; // row-style Hermite normal form
    IntMat U; // unimodular, U * A = H
};

/**
 * Row-style Hermite normal form by integer row operations: pivots are
 * positive, entries above each pivot are reduced into [0, pivot).  The
 * transform U is accumulated and verified unimodular.
 */
inline HermiteResult hermite_normal_form(const IntMat &A) {
    std::size_t m = A.rows(), n = A.cols();
    IntMat H = A;
    IntMat U = IntMat::identity(m, Int(1), Int(0));
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < n; ++j) std::swap(H.at(a, j), H.at(b, j));
        for (std::size_t j = 0; j < m; ++j) std::swap(U.at(a, j), U.at(b, j));
    };
    auto addmul_row = [&](std::size_t dst, std::size_t src, const Int &f) {
        for (std::size_t j = 0; j < n; ++j) H.at(dst, j) += f * H.at(src, j);
        for (std::size_t j = 0; j < m; ++j) U.at(dst, j) += f * U.at(src, j);
    };
    auto negate_row = [&](std::size_t r) {
        for (std::size_t j = 0; j < n; ++j) H.at(r, j) = -H.at(r, j);
        for (std::size_t j = 0; j < m; ++j) U.at(r, j) = -U.at(r, j);
    };

    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        // Euclid on the column below `row`.
        while (true) {
            std::size_t best = m;
            for (std::size_t i = row; i < m; ++i)
                if (H.at(i, col) != 0 &&
                    (best == m ||
                     boost::multiprecision::abs(H.at(i, col)) <
                         boost::multiprecision::abs(H.at(best, col))))
                    best = i;
            if (best == m) break; // column exhausted
            if (best != row) swap_rows(best, row);
            bool clean = true;
            for (std::size_t i = row + 1; i < m; ++i) {
                if (H.at(i, col) == 0) continue;
                Int q = H.at(i, col) / H.at(row, col);
                addmul_row(i, row, -q);
                if (H.at(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H.at(row, col) == 0) continue;
        if (H.at(row, col) < 0) negate_row(row);
        for (std::size_t i = 0; i < row; ++i) {
            Int q = H.at(i, col) / H.at(row, col);
            if (H.at(i, col) - q * H.at(row, col) < 0) q -= 1;
            if (q != 0) addmul_row(i, row, -q);
        }
        ++row;
    }
    if (!is_unimodular(U)) fail(errc::not_unimodular, "HNF transform lost unimodularity");
    return {H, U};
}

struct SmithResult {
    IntMat D; // diagonal with d_i | d_{i+1}
    IntMat U; // unimodular
    IntMat V; // unimodular, U * A * V = D
};

/** Smith normal form with both transforms, verified unimodular. */
inline SmithResult smith_normal_form(const IntMat &A) {
    std::size_t m = A.rows(), n = A.cols();
    IntMat D = A;
    IntMat U = IntMat::identity(m, Int(1), Int(0));
    IntMat V = IntMat::identity(n, Int(1), Int(0));

    auto row_addmul = [&](std::size_t dst, std::size_t src, const Int &f) {
        for (std::size_t j = 0; j < n; ++j) D.at(dst, j) += f * D.at(src, j);
        for (std::size_t j = 0; j < m; ++j) U.at(dst, j) += f * U.at(src, j);
    };
    auto col_addmul = [&](std::size_t dst, std::size_t src, const Int &f) {
        for (std::size_t i = 0; i < m; ++i) D.at(i, dst) += f * D.at(i, src);
        for (std::size_t i = 0; i < n; ++i) V.at(i, dst) += f * V.at(i, src);
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < n; ++j) std::swap(D.at(a, j), D.at(b, j));
        for (std::size_t j = 0; j < m; ++j) std::swap(U.at(a, j), U.at(b, j));
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < m; ++i) std::swap(D.at(i, a), D.at(i, b));
        for (std::size_t i = 0; i < n; ++i) std::swap(V.at(i, a), V.at(i, b));
    };

    std::size_t t = 0;
    while (t < m && t < n) {
        // Find a nonzero entry with minimal absolute value in the block.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (D.at(i, j) != 0 &&
                    (pi == m || boost::multiprecision::abs(D.at(i, j)) <
                                    boost::multiprecision::abs(D.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m) break;
        if (pi != t) row_swap(pi, t);
        if (pj != t) col_swap(pj, t);
        bool done = true;
        for (std::size_t i = t + 1; i < m; ++i) {
            if (D.at(i, t) == 0) continue;
            row_addmul(i, t, -(D.at(i, t) / D.at(t, t)));
            if (D.at(i, t) != 0) done = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (D.at(t, j) == 0) continue;
            col_addmul(j, t, -(D.at(t, j) / D.at(t, t)));
            if (D.at(t, j) != 0) done = false;
        }
        if (!done) continue;
        // Divisibility fix-up: fold any non-multiple into this pivot.
        bool redo = false;
        for (std::size_t i = t + 1; i < m && !redo; ++i)
            for (std::size_t j = t + 1; j < n && !redo; ++j)
                if (D.at(i, j) % D.at(t, t) != 0) {
                    row_addmul(t, i, Int(1));
                    redo = true;
                }
        if (redo) continue;
        if (D.at(t, t) < 0) {
            for (std::size_t j = 0; j < n; ++j) D.at(t, j) = -D.at(t, j);
            for (std::size_t j = 0; j < m; ++j) U.at(t, j) = -U.at(t, j);
        }
        ++t;
    }
    if (!is_unimodular(U) || !is_unimodular(V))
        fail(errc::not_unimodular, "SNF transform lost unimodularity");
    return {D, U, V};
}

inline std::vector<Int> elementary_divisors(const IntMat &A) {
    auto snf = smith_normal_form(A);
    std::vector<Int> d;
    for (std::size_t i = 0; i < std::min(A.rows(), A.cols()); ++i)
        if (snf.D.at(i, i) != 0) d.push_back(snf.D.at(i, i));
    return d;
}

} // namespace abeloid
