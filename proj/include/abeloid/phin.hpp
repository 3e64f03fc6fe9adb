#pragma once

#include "abeloid.hpp"

namespace abeloid {

using PadVec = std::vector<PadicNumber>;

namespace detail {

inline PadMat stack_rows(const std::vector<PadVec> &rows, std::size_t n, const PadicNumber &z) {
    PadMat m(rows.size(), n, z);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n) fail(errc::dimension_mismatch, "vector length mismatch");
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

// Row vectors a with a . v = 0 for every v in the span.
inline std::vector<PadVec> annihilator(const std::vector<PadVec> &span, std::size_t n,
                                       const PadicNumber &z, bool *certified = nullptr) {
    if (span.empty()) {
        std::vector<PadVec> out;
        PadicNumber one = make_padic(Rational(1), z.prime(), z.precision());
        for (std::size_t i = 0; i < n; ++i) {
            PadVec e(n, z);
            e[i] = one;
            out.push_back(std::move(e));
        }
        return out;
    }
    auto ker = padic_kernel(stack_rows(span, n, z));
    if (certified) *certified = *certified && ker.certified;
    return ker.basis;
}

inline std::size_t span_rank(const std::vector<PadVec> &span, std::size_t n, const PadicNumber &z,
                             bool *certified = nullptr) {
    if (span.empty()) return 0;
    auto ker = padic_kernel(stack_rows(span, n, z));
    if (certified) *certified = *certified && ker.certified;
    return ker.rank;
}

} // namespace detail

/**
 * Filtered (phi, N)-module over Q_p: an invertible Frobenius phi, a
 * monodromy N with N phi = p phi N digit-exactly, and a decreasing
 * exhaustive filtration given by its jumps (full space below the
 * smallest listed index, zero above the largest).
 */
class FilteredPhiNModule {
public:
    FilteredPhiNModule(const Int &p, int prec, PadMat phi, PadMat mono,
                       std::map<int, std::vector<PadVec>> fil)
        : p_(p), prec_(prec), n_(phi.rows()), phi_(std::move(phi)), mono_(std::move(mono)),
          fil_(std::move(fil)) {
        if (phi_.rows() != phi_.cols() || mono_.rows() != n_ || mono_.cols() != n_)
            fail(errc::dimension_mismatch, "phi and N must be square of equal size");
        // N phi = p phi N, digit-exactly.
        PadicNumber ps = make_padic(Rational(p_), p_, prec_);
        PadMat lhs = mono_ * phi_;
        PadMat rhs = phi_ * mono_;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (!(lhs.at(i, j) == ps * rhs.at(i, j)))
                    fail(errc::bad_input, "N phi != p phi N at entry (" + std::to_string(i) +
                                              "," + std::to_string(j) + ")");
        // Decreasing: each listed step is contained in the previous one.
        const std::vector<PadVec> *prev = nullptr;
        for (auto &[idx, vecs] : fil_) {
            for (auto &v : vecs)
                if (v.size() != n_) fail(errc::dimension_mismatch, "filtration vector length");
            if (prev) {
                std::vector<PadVec> both = *prev;
                both.insert(both.end(), vecs.begin(), vecs.end());
                if (detail::span_rank(both, n_, zero()) != detail::span_rank(*prev, n_, zero()))
                    fail(errc::bad_input, "filtration is not decreasing at index " +
                                              std::to_string(idx));
            }
            prev = &vecs;
        }
    }

    std::size_t dim() const { return n_; }
    const Int &prime() const { return p_; }
    int precision() const { return prec_; }
    const PadMat &phi() const { return phi_; }
    const PadMat &mono() const { return mono_; }
    const std::map<int, std::vector<PadVec>> &filtration() const { return fil_; }
    PadicNumber zero() const { return PadicNumber::zero(p_, prec_); }

    // Fil^i for arbitrary i under the jump convention.
    std::vector<PadVec> fil_at(int i) const {
        if (fil_.empty() || i < fil_.begin()->first) return full_basis();
        auto it = fil_.lower_bound(i);
        if (it == fil_.end()) return {};
        return it->second;
    }

    std::size_t fil_dim(int i) const {
        auto v = fil_at(i);
        return detail::span_rank(v, n_, zero());
    }

private:
    std::vector<PadVec> full_basis() const {
        std::vector<PadVec> out;
        PadicNumber one = make_padic(Rational(1), p_, prec_);
        for (std::size_t i = 0; i < n_; ++i) {
            PadVec e(n_, zero());
            e[i] = one;
            out.push_back(std::move(e));
        }
        return out;
    }

    Int p_;
    int prec_;
    std::size_t n_;
    PadMat phi_, mono_;
    std::map<int, std::vector<PadVec>> fil_;
};

/**
 * D_st of an abeloid with period matrix Q: dimension 2g over basis
 * (x_1..x_g, y_1..y_g), phi = diag(p^-1 Id, Id), N(y_i) = sum_j
 * ord(q_ij) x_j, Fil^0 spanned by y_i + sum_j log(q_ij) x_j.
 */
inline FilteredPhiNModule dst_of_abeloid(const PeriodMatrix &Q) {
    std::size_t g = Q.dim();
    const Int &p = Q.manifest()->prime();
    int N = Q.manifest()->precision();
    Q.validate();
    PadicNumber z = PadicNumber::zero(p, N);
    PadicNumber one = make_padic(Rational(1), p, N);
    PadicNumber pinv = make_padic(Rational(1, p), p, N);
    PadMat phi(2 * g, 2 * g, z), mono(2 * g, 2 * g, z);
    for (std::size_t i = 0; i < g; ++i) {
        phi.at(i, i) = pinv;
        phi.at(g + i, g + i) = one;
    }
    RatMat ord = Q.ord_matrix();
    // Column g+i (image of y_i) has x_j component ord(q_ij).
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) mono.at(j, g + i) = make_padic(ord.at(i, j), p, N);
    std::vector<PadVec> fil0;
    for (std::size_t i = 0; i < g; ++i) {
        PadVec f(2 * g, z);
        for (std::size_t j = 0; j < g; ++j) f[j] = Q.at(i, j).log();
        f[g + i] = one;
        fil0.push_back(std::move(f));
    }
    // The listed vectors are a basis of Fil^0 (rank check, not taken on faith).
    if (detail::span_rank(fil0, 2 * g, z) != g)
        fail(errc::internal, "Fil^0 vectors of D_st are dependent");
    return FilteredPhiNModule(p, N, std::move(phi), std::move(mono), {{0, std::move(fil0)}});
}

/**
 * Hom in the category of filtered (phi, N)-modules: matrices T with
 * T phi_A = phi_B T, T N_A = N_B T and T(Fil^i_A) inside Fil^i_B, as a
 * p-adic kernel computation.  When both modules come from abeloids the
 * caller may pass the two L-invariants; the Sylvester commutant shortcut
 * is then run as well and its dimension must agree.
 */
struct HomMfResult {
    std::vector<PadMat> basis; // dim_B x dim_A matrices
    std::size_t dim = 0;
    bool certified = true;
    bool shortcut_used = false;
    std::size_t shortcut_dim = 0;
};

inline HomMfResult hom_mf(const FilteredPhiNModule &DA, const FilteredPhiNModule &DB,
                          const PadMat *LA = nullptr, const PadMat *LB = nullptr) {
    if (DA.prime() != DB.prime() || DA.precision() != DB.precision())
        fail(errc::bad_input, "modules must share prime and precision");
    std::size_t na = DA.dim(), nb = DB.dim();
    const Int &p = DA.prime();
    int N = DA.precision();
    PadicNumber z = PadicNumber::zero(p, N);
    std::vector<PadVec> rows; // over vec(T), row-major, length nb*na
    auto commute_rows = [&](const PadMat &MA, const PadMat &MB) {
        // (T MA - MB T)[i][j] = 0 for all i < nb, j < na.
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < na; ++j) {
                PadVec r(nb * na, z);
                for (std::size_t l = 0; l < na; ++l) r[i * na + l] = r[i * na + l] + MA.at(l, j);
                for (std::size_t k = 0; k < nb; ++k) r[k * na + j] = r[k * na + j] - MB.at(i, k);
                rows.push_back(std::move(r));
            }
    };
    commute_rows(DA.phi(), DB.phi());
    commute_rows(DA.mono(), DB.mono());
    HomMfResult out;
    for (auto &[idx, vecs] : DA.filtration()) {
        auto fb = DB.fil_at(idx);
        auto ann = detail::annihilator(fb, nb, z, &out.certified);
        for (auto &f : vecs)
            for (auto &a : ann) {
                // a . (T f) = sum_{k,l} a[k] T[k][l] f[l] = 0.
                PadVec r(nb * na, z);
                for (std::size_t k = 0; k < nb; ++k)
                    for (std::size_t l = 0; l < na; ++l) r[k * na + l] = a[k] * f[l];
                rows.push_back(std::move(r));
            }
    }
    auto ker = padic_kernel(detail::stack_rows(rows, nb * na, z));
    out.certified = out.certified && ker.certified;
    out.dim = ker.basis.size();
    for (auto &v : ker.basis) {
        PadMat T(nb, na, z);
        for (std::size_t k = 0; k < nb; ++k)
            for (std::size_t l = 0; l < na; ++l) T.at(k, l) = v[k * na + l];
        out.basis.push_back(std::move(T));
    }
    if (LA && LB) {
        out.shortcut_used = true;
        auto syl = sylvester_kernel(*LA, *LB);
        out.shortcut_dim = syl.basis.size();
        if (out.shortcut_dim != out.dim)
            fail(errc::internal, "MF hom disagrees with the L-invariant Sylvester shortcut");
    }
    return out;
}

/** Kernel of (phi - p^m) intersected with kernel of N, over Q_p. */
inline PadicKernel phi_n_eigenspace(const FilteredPhiNModule &D, int m) {
    std::size_t n = D.dim();
    const Int &p = D.prime();
    int N = D.precision();
    PadicNumber z = PadicNumber::zero(p, N);
    PadicNumber pm = make_padic(m >= 0 ? Rational(int_pow(p, m)) : Rational(1, int_pow(p, -m)),
                                p, N);
    PadMat S(2 * n, n, z);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            S.at(i, j) = D.phi().at(i, j) - (i == j ? pm : z);
            S.at(n + i, j) = D.mono().at(i, j);
        }
    return padic_kernel(S);
}

/** Newton number t_N = v_p(det phi) and Hodge number t_H from the filtration. */
struct NewtonHodge {
    long t_newton = 0;
    long t_hodge = 0;
    bool equal = false;
};

inline NewtonHodge newton_hodge(const FilteredPhiNModule &D) {
    // det(phi) via elimination; the valuation is the sum of pivot valuations.
    PadMat m = D.phi();
    std::size_t n = D.dim();
    long tn = 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pr = n;
        for (std::size_t i = col; i < n; ++i) {
            if (m.at(i, col).is_zero()) continue;
            if (pr == n || m.at(i, col).valuation() < m.at(pr, col).valuation()) pr = i;
        }
        if (pr == n) fail(errc::singular_phi, "phi is not invertible");
        for (std::size_t j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(pr, j));
        tn += m.at(col, col).valuation();
        PadicNumber inv = m.at(col, col).inverse();
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m.at(i, col).is_zero()) continue;
            PadicNumber f = m.at(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m.at(i, j) = m.at(i, j) - f * m.at(col, j);
        }
    }
    NewtonHodge out;
    out.t_newton = tn;
    const auto &fil = D.filtration();
    if (!fil.empty()) {
        int lo = fil.begin()->first - 1;
        int hi = fil.rbegin()->first;
        long th = 0;
        for (int i = lo; i <= hi; ++i)
            th += static_cast<long>(i) *
                  static_cast<long>(D.fil_dim(i) - D.fil_dim(i + 1));
        out.t_hodge = th;
    }
    out.equal = (out.t_newton == out.t_hodge);
    return out;
}

/**
 * Rational structure of Def 2.4 shape: the standard basis is partitioned
 * A | B0 | B1 | C in order; phi_V acts as 1, p, p, p^2 on the blocks and
 * N_V is zero on A and B1 and restricts to isomorphisms C -> B0 -> A.
 */
struct RationalStructure {
    std::size_t dimA = 0, dimB0 = 0, dimB1 = 0, dimC = 0;
    RatMat phi_V, N_V;

    std::size_t dim() const { return dimA + dimB0 + dimB1 + dimC; }

    void validate(const Int &p) const {
        std::size_t n = dim();
        if (phi_V.rows() != n || phi_V.cols() != n || N_V.rows() != n || N_V.cols() != n)
            fail(errc::shape_mismatch, "rational structure matrices have wrong size");
        auto scalar_of = [&](std::size_t j) -> Rational {
            if (j < dimA) return Rational(1);
            if (j < dimA + dimB0 + dimB1) return Rational(p);
            return Rational(p * p);
        };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (phi_V.at(i, j) != (i == j ? scalar_of(j) : Rational(0)))
                    fail(errc::bad_input, "phi_V is not the prescribed block scalar");
        if (dimA != dimB0 || dimB0 != dimC)
            fail(errc::shape_mismatch, "N_V cannot chain C -> B0 -> A");
        std::size_t a0 = 0, b00 = dimA, b10 = dimA + dimB0, c0 = dimA + dimB0 + dimB1;
        for (std::size_t j = 0; j < n; ++j) {
            bool killed = (j < dimA) || (j >= b10 && j < c0);
            for (std::size_t i = 0; i < n; ++i) {
                bool allowed = false;
                if (!killed && j >= c0) allowed = (i >= b00 && i < b10); // C -> B0
                if (!killed && j >= b00 && j < b10) allowed = (i < dimA); // B0 -> A
                if (!allowed && N_V.at(i, j) != 0)
                    fail(errc::bad_input, "N_V has support outside the C -> B0 -> A chain");
            }
        }
        if (dimC > 0) {
            RatMat cb(dimB0, dimC), ba(dimA, dimB0);
            for (std::size_t i = 0; i < dimB0; ++i)
                for (std::size_t j = 0; j < dimC; ++j) cb.at(i, j) = N_V.at(b00 + i, c0 + j);
            for (std::size_t i = 0; i < dimA; ++i)
                for (std::size_t j = 0; j < dimB0; ++j) ba.at(i, j) = N_V.at(a0 + i, b00 + j);
            if (det(cb) == 0 || det(ba) == 0)
                fail(errc::bad_input, "N_V does not restrict to isomorphisms C -> B0 -> A");
        }
    }
};

/**
 * Ordinarity in the weight-2 shape: the two direct-sum decompositions
 *   V = Fil^1 (+) A  and  V = Fil^2 (+) (A (+) B0 (+) B1),
 * both checked by exact rank computations over Q_p.
 */
inline bool is_ordinary_weight2(const FilteredPhiNModule &D, const RationalStructure &R) {
    if (R.dim() != D.dim()) fail(errc::shape_mismatch, "rational structure size mismatch");
    for (auto &[idx, vecs] : D.filtration())
        if (idx < 0 || idx > 2) fail(errc::shape_mismatch, "filtration is not of weight-2 shape");
    const Int &p = D.prime();
    int N = D.precision();
    PadicNumber z = PadicNumber::zero(p, N);
    PadicNumber one = make_padic(Rational(1), p, N);
    auto block = [&](std::size_t lo, std::size_t hi) {
        std::vector<PadVec> out;
        for (std::size_t i = lo; i < hi; ++i) {
            PadVec e(D.dim(), z);
            e[i] = one;
            out.push_back(std::move(e));
        }
        return out;
    };
    auto direct_sum = [&](std::vector<PadVec> fil, const std::vector<PadVec> &comp) {
        std::size_t df = detail::span_rank(fil, D.dim(), z);
        if (df + comp.size() != D.dim()) return false;
        fil.insert(fil.end(), comp.begin(), comp.end());
        return detail::span_rank(fil, D.dim(), z) == D.dim();
    };
    return direct_sum(D.fil_at(1), block(0, R.dimA)) &&
           direct_sum(D.fil_at(2), block(0, R.dimA + R.dimB0 + R.dimB1));
}

/**
 * Raskind admissibility: dim over Q_p of Fil^1 meet (B1 (x) Q_p) versus
 * dim over Q of Fil^1 meet B1.  The Q-side runs on the symbolic
 * annihilator of Fil^1 when supplied (certified under the declared
 * independence facts), else falls back to rational reconstruction with
 * an explicit uncertified flag.
 */
struct RaskindVerdict {
    std::size_t dim_q = 0;
    std::size_t dim_qp = 0;
    bool admissible = false;
    bool certified = true;
    std::string notes;
};

struct IndependenceFacts {
    // Known Q-linear relations: each named constant is replaced by the
    // given expression before the independence assumption is applied to
    // the remaining distinct monomials.
    std::map<std::string, Sym> substitutions;
};

inline RaskindVerdict raskind_check(const FilteredPhiNModule &D, const RationalStructure &R,
                                    const std::vector<std::vector<Sym>> *fil1_annihilator,
                                    const IndependenceFacts &facts = {},
                                    bool require_certified = false, Int height = 0) {
    if (R.dim() != D.dim()) fail(errc::shape_mismatch, "rational structure size mismatch");
    std::size_t n = D.dim();
    std::size_t b1lo = R.dimA + R.dimB0, b1n = R.dimB1;
    const Int &p = D.prime();
    int N = D.precision();
    PadicNumber z = PadicNumber::zero(p, N);
    RaskindVerdict out;

    // dim over Q_p: dim Fil^1 + dim B1 - rank of the union.
    auto fil1 = D.fil_at(1);
    std::size_t df = detail::span_rank(fil1, n, z, &out.certified);
    PadicNumber one = make_padic(Rational(1), p, N);
    std::vector<PadVec> uni = fil1;
    for (std::size_t i = 0; i < b1n; ++i) {
        PadVec e(n, z);
        e[b1lo + i] = one;
        uni.push_back(std::move(e));
    }
    bool qp_certified = true;
    std::size_t ru = detail::span_rank(uni, n, z, &qp_certified);
    out.dim_qp = df + b1n - ru;

    if (fil1_annihilator) {
        // Exact path: constraints on a vector supported on B1, one row per
        // annihilator row per monomial per quadratic component.
        std::vector<std::vector<Rational>> rat_rows;
        for (const auto &row : *fil1_annihilator) {
            if (row.size() != n) fail(errc::dimension_mismatch, "annihilator row length");
            std::map<std::vector<std::string>, std::vector<Quad>> by_monomial;
            for (std::size_t j = 0; j < b1n; ++j) {
                Sym s = row[b1lo + j];
                for (const auto &[name, expr] : facts.substitutions) s = s.substituted(name, expr);
                for (const auto &[mono, coeff] : s.terms()) {
                    auto &vec = by_monomial[mono];
                    vec.resize(b1n);
                    vec[j] = vec[j] + coeff;
                }
            }
            for (auto &[mono, coeffs] : by_monomial) {
                coeffs.resize(b1n);
                std::vector<Rational> r(b1n), rs(b1n);
                bool any_s = false;
                for (std::size_t j = 0; j < b1n; ++j) {
                    r[j] = coeffs[j].rat();
                    rs[j] = coeffs[j].surd();
                    any_s = any_s || rs[j] != 0;
                }
                rat_rows.push_back(std::move(r));
                if (any_s) rat_rows.push_back(std::move(rs));
            }
        }
        RatMat sys(rat_rows.empty() ? 1 : rat_rows.size(), b1n);
        for (std::size_t i = 0; i < rat_rows.size(); ++i)
            for (std::size_t j = 0; j < b1n; ++j) sys.at(i, j) = rat_rows[i][j];
        out.dim_q = kernel_basis(sys).size();
        out.notes = "Q-side certified under declared independence facts";
    } else {
        if (require_certified)
            fail(errc::insufficient_facts,
                 "no symbolic annihilator supplied; cannot certify the rational dimension");
        // Heuristic path: rational reconstruction of the intersection basis.
        auto ann = detail::annihilator(fil1, n, z);
        std::vector<PadVec> constraints; // rows over B1 coordinates
        for (auto &a : ann) {
            PadVec r(b1n, z);
            for (std::size_t j = 0; j < b1n; ++j) r[j] = a[b1lo + j];
            constraints.push_back(std::move(r));
        }
        auto ker = padic_kernel(detail::stack_rows(constraints, b1n, z));
        auto rat = rational_subspace(ker.basis, p, N, height == 0 ? Int(1000000) : height);
        out.dim_q = rat.size();
        out.certified = false;
        out.notes = "Q-side via rational reconstruction: uncertified";
    }
    if (out.dim_q > out.dim_qp)
        fail(errc::internal, "rational dimension exceeds the p-adic dimension");
    out.admissible = (out.dim_q == out.dim_qp);
    return out;
}

} // namespace abeloid
