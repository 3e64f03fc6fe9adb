#pragma once

#include "linalg_padic.hpp"
#include "mult.hpp"
#include "span_solver.hpp"

namespace abeloid {

using SymMat = Matrix<Sym>;

/**
 * Period matrix of an abeloid variety of dimension g over Q_p: a g x g
 * matrix Q of multiplicative coordinates whose valuation matrix ord(Q)
 * is invertible.  The column span of Q (together with p^Z-style
 * conventions baked into the coordinates) is the period lattice.
 */
class PeriodMatrix {
public:
    PeriodMatrix(ManifestPtr man, std::size_t g)
        : man_(std::move(man)), g_(g), entries_(g * g, MultElement::one(man_)) {
        if (g == 0) fail(errc::dimension_mismatch, "dimension must be positive");
    }

    static PeriodMatrix parse(const std::vector<std::vector<std::string>> &rows, ManifestPtr man) {
        std::size_t g = rows.size();
        PeriodMatrix q(man, g);
        for (std::size_t i = 0; i < g; ++i) {
            if (rows[i].size() != g) fail(errc::shape_mismatch, "period matrix must be square");
            for (std::size_t j = 0; j < g; ++j) q.at(i, j) = parse_entry(rows[i][j], man);
        }
        q.validate();
        return q;
    }

    std::size_t dim() const { return g_; }
    const ManifestPtr &manifest() const { return man_; }

    MultElement &at(std::size_t i, std::size_t j) { return entries_[index(i, j)]; }
    const MultElement &at(std::size_t i, std::size_t j) const { return entries_[index(i, j)]; }

    // ord(Q): the matrix of p-exponents; must be rational and invertible.
    RatMat ord_matrix() const {
        RatMat m(g_, g_);
        for (std::size_t i = 0; i < g_; ++i)
            for (std::size_t j = 0; j < g_; ++j) {
                const Quad &e = at(i, j).p_exp();
                if (!e.is_rational())
                    fail(errc::singular_ord, "entry (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ") has an irrational p-exponent");
                m.at(i, j) = e.as_rational();
            }
        return m;
    }

    void validate() const {
        if (det(ord_matrix()) == 0)
            fail(errc::singular_ord, "ord(Q) is singular: not a period matrix");
    }

    PadMat log_matrix() const {
        const Int &p = man_->prime();
        int N = man_->precision();
        PadMat m(g_, g_, PadicNumber::zero(p, N));
        for (std::size_t i = 0; i < g_; ++i)
            for (std::size_t j = 0; j < g_; ++j) m.at(i, j) = at(i, j).log();
        return m;
    }

    SymMat log_sym_matrix() const {
        SymMat m(g_, g_);
        for (std::size_t i = 0; i < g_; ++i)
            for (std::size_t j = 0; j < g_; ++j) m.at(i, j) = at(i, j).log_sym();
        return m;
    }

    // L(Q) = ord(Q)^(-1) * log(Q), numerically.
    PadMat l_invariant() const {
        RatMat inv = rat_inverse(ord_matrix());
        const Int &p = man_->prime();
        int N = man_->precision();
        PadMat m = log_matrix();
        PadMat r(g_, g_, PadicNumber::zero(p, N));
        for (std::size_t i = 0; i < g_; ++i)
            for (std::size_t j = 0; j < g_; ++j) {
                PadicNumber s = PadicNumber::zero(p, N);
                for (std::size_t k = 0; k < g_; ++k)
                    s = s + make_padic(inv.at(i, k), p, N) * m.at(k, j);
                r.at(i, j) = s;
            }
        return r;
    }

    // L(Q) with the unit logarithms kept symbolic.
    SymMat l_invariant_sym() const {
        RatMat inv = rat_inverse(ord_matrix());
        SymMat m = log_sym_matrix();
        SymMat r(g_, g_);
        for (std::size_t i = 0; i < g_; ++i)
            for (std::size_t j = 0; j < g_; ++j) {
                Sym s;
                for (std::size_t k = 0; k < g_; ++k)
                    s = s + Quad(inv.at(i, k)) * m.at(k, j);
                r.at(i, j) = s;
            }
        return r;
    }

    // N (x) Q: row i of the result is the N[i,*]-weighted product of rows.
    PeriodMatrix compose_left(const QuadMat &N, bool completion = false) const {
        if (N.rows() != g_ || N.cols() != g_) fail(errc::dimension_mismatch, "compose_left shape");
        PeriodMatrix r(man_, g_);
        for (std::size_t i = 0; i < g_; ++i)
            for (std::size_t j = 0; j < g_; ++j) {
                MultElement e = MultElement::one(man_);
                for (std::size_t k = 0; k < g_; ++k)
                    e = e * at(k, j).pow(N.at(i, k), completion);
                r.at(i, j) = e;
            }
        return r;
    }

    // Q (x) M: column j of the result is the M[*,j]-weighted product of columns.
    PeriodMatrix compose_right(const QuadMat &M, bool completion = false) const {
        if (M.rows() != g_ || M.cols() != g_) fail(errc::dimension_mismatch, "compose_right shape");
        PeriodMatrix r(man_, g_);
        for (std::size_t i = 0; i < g_; ++i)
            for (std::size_t j = 0; j < g_; ++j) {
                MultElement e = MultElement::one(man_);
                for (std::size_t k = 0; k < g_; ++k)
                    e = e * at(i, k).pow(M.at(k, j), completion);
                r.at(i, j) = e;
            }
        return r;
    }

    // Basis change by a unimodular integer matrix: Q -> M^(-1) (x) Q (x) M.
    PeriodMatrix change_basis(const IntMat &M) const {
        if (!is_unimodular(M)) fail(errc::not_unimodular, "basis change must be unimodular");
        RatMat Minv = rat_inverse(to_rational(M));
        QuadMat qm(g_, g_), qi(g_, g_);
        for (std::size_t i = 0; i < g_; ++i)
            for (std::size_t j = 0; j < g_; ++j) {
                qm.at(i, j) = Quad(Rational(M.at(i, j)));
                qi.at(i, j) = Quad(Minv.at(i, j));
            }
        return compose_left(qi).compose_right(qm);
    }

    /**
     * Riemann-form sanity check: Q symmetric in coordinates and ord(Q)
     * symmetric positive definite (Sylvester's criterion, exact).
     */
    bool riemann_check() const {
        for (std::size_t i = 0; i < g_; ++i)
            for (std::size_t j = i + 1; j < g_; ++j)
                if (at(i, j) != at(j, i)) return false;
        RatMat o = ord_matrix();
        for (std::size_t k = 1; k <= g_; ++k) {
            RatMat minor(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) minor.at(i, j) = o.at(i, j);
            if (det(minor) <= 0) return false;
        }
        return true;
    }

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (i >= g_ || j >= g_) fail(errc::dimension_mismatch, "period matrix index");
        return i * g_ + j;
    }

    ManifestPtr man_;
    std::size_t g_;
    std::vector<MultElement> entries_;
};

} // namespace abeloid
