#pragma once

#include "linalg_rational.hpp"
#include "padic.hpp"

namespace abeloid {

using PadMat = Matrix<PadicNumber>;

inline PadMat pad_zero_matrix(std::size_t r, std::size_t c, const Int &p, int N) {
    return PadMat(r, c, PadicNumber::zero(p, N));
}

/**
 * Kernel (and rank) of a matrix over Q_p at working precision.
 *
 * Pivoting picks the minimal-valuation entry of each column, which keeps
 * the elimination numerically sane in the ultrametric.  The result is
 * certified when every pivot retains at least 16 significant digits:
 * a pivot too close to the precision floor could be an undetected zero,
 * flipping a rank decision.
 */
struct PadicKernel {
    std::vector<std::vector<PadicNumber>> basis; // first nonzero coordinate = 1
    std::size_t rank = 0;
    bool certified = true;
    long min_pivot_precision = -1;
};

inline PadicKernel padic_kernel(PadMat m) {
    constexpr long margin = 16;
    PadicKernel out;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = m.rows();
        for (std::size_t i = row; i < m.rows(); ++i) {
            if (m.at(i, col).is_zero()) continue;
            if (pr == m.rows() || m.at(i, col).valuation() < m.at(pr, col).valuation()) pr = i;
        }
        if (pr == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(pr, j));
        const PadicNumber &piv = m.at(row, col);
        long pprec = piv.precision();
        if (out.min_pivot_precision < 0 || pprec < out.min_pivot_precision)
            out.min_pivot_precision = pprec;
        if (pprec < margin) out.certified = false;
        PadicNumber inv = piv.inverse();
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            PadicNumber f = m.at(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    out.rank = pivots.size();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    const PadicNumber &z = m.zero();
    PadicNumber one = make_padic(Rational(1), z.prime(), z.precision());
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<PadicNumber> v(m.cols(), z);
        v[free_col] = one;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(r, free_col);
        // Normalise: first nonzero coordinate becomes 1.
        for (auto &x : v) {
            if (!x.is_zero()) {
                PadicNumber inv = x.inverse();
                for (auto &y : v) y = y * inv;
                break;
            }
        }
        out.basis.push_back(std::move(v));
    }
    return out;
}

inline std::size_t padic_rank(const PadMat &m) { return padic_kernel(m).rank; }

/**
 * The Sylvester system of the commuting equation L_A M = M L_B: a
 * (g*h) x (g*h) matrix acting on vec(M) (row-major).  Its kernel is
 * Hom computed on the analytic side.
 */
inline PadMat sylvester_matrix(const PadMat &LA, const PadMat &LB) {
    if (LA.rows() != LA.cols() || LB.rows() != LB.cols())
        fail(errc::dimension_mismatch, "Sylvester operands must be square");
    std::size_t g = LA.rows(), h = LB.rows();
    PadMat S(g * h, g * h, LA.zero());
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < h; ++j)
            for (std::size_t k = 0; k < g; ++k)
                for (std::size_t l = 0; l < h; ++l) {
                    PadicNumber c = S.zero();
                    if (l == j) c = c + LA.at(i, k);
                    if (k == i) c = c - LB.at(l, j);
                    S.at(i * h + j, k * h + l) = c;
                }
    return S;
}

struct SylvesterKernel {
    std::vector<PadMat> basis; // g x h matrices M with L_A M = M L_B
    bool certified = true;
};

inline SylvesterKernel sylvester_kernel(const PadMat &LA, const PadMat &LB) {
    std::size_t g = LA.rows(), h = LB.rows();
    auto ker = padic_kernel(sylvester_matrix(LA, LB));
    SylvesterKernel out;
    out.certified = ker.certified;
    for (auto &v : ker.basis) {
        PadMat M(g, h, LA.zero());
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < h; ++j) M.at(i, j) = v[i * h + j];
        out.basis.push_back(std::move(M));
    }
    return out;
}

/**
 * Maximal Q-rational subspace of a p-adic span, by entrywise rational
 * reconstruction of the reduced-echelon basis.  Rows that fail to
 * reconstruct contribute nothing.  The output is heuristically rational:
 * reconstruction success is not a proof of membership, so callers must
 * either verify against an exact model or flag the result uncertified.
 */
inline std::vector<std::vector<Rational>>
rational_subspace(const std::vector<std::vector<PadicNumber>> &span, const Int &p, int N,
                  Int height = 0) {
    std::vector<std::vector<Rational>> out;
    if (span.empty()) return out;
    std::size_t n = span[0].size();
    PadMat m(span.size(), n, PadicNumber::zero(p, N));
    for (std::size_t i = 0; i < span.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = span[i][j];
    // Reduced echelon via kernel machinery: eliminate rows directly.
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m.rows(); ++col) {
        std::size_t pr = m.rows();
        for (std::size_t i = row; i < m.rows(); ++i) {
            if (m.at(i, col).is_zero()) continue;
            if (pr == m.rows() || m.at(i, col).valuation() < m.at(pr, col).valuation()) pr = i;
        }
        if (pr == m.rows()) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(m.at(row, j), m.at(pr, j));
        PadicNumber inv = m.at(row, col).inverse();
        for (std::size_t j = 0; j < n; ++j) m.at(row, j) = m.at(row, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            PadicNumber f = m.at(i, col);
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = m.at(i, j) - f * m.at(row, j);
        }
        ++row;
    }
    for (std::size_t i = 0; i < row; ++i) {
        std::vector<Rational> v(n);
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            if (m.at(i, j).is_zero()) {
                v[j] = 0;
                continue;
            }
            auto rec = rational_reconstruct(m.at(i, j), height);
            if (!rec) ok = false;
            else v[j] = *rec;
        }
        if (ok) out.push_back(std::move(v));
    }
    return out;
}

} // namespace abeloid
