#pragma once

#include <set>

#include "abeloid.hpp"

namespace abeloid {

/**
 * Coordinate channels of a pair of period matrices over one manifest:
 * the p-exponent and one channel per declared unit generator (split into
 * rational and surd components when a quadratic irrationality is
 * present).  These feed exact_span_solve.  Torsion exponents are
 * deliberately absent: roots of unity die after passing to a multiple of
 * the candidate isogeny, so they constrain only the integral lattice
 * (handled via the congruence rows below), never Hom (x) Q.
 */
inline std::vector<SpanChannel> hom_channels(const PeriodMatrix &A, const PeriodMatrix &B) {
    if (A.manifest() != B.manifest())
        fail(errc::generator_mismatch, "period matrices over different manifests");
    std::size_t g = A.dim(), h = B.dim();
    std::vector<SpanChannel> out;

    SpanChannel p{"p", A.ord_matrix(), B.ord_matrix()};
    out.push_back(std::move(p));

    std::set<std::string> symbols;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            for (auto &[s, e] : A.at(i, j).unit_exp()) symbols.insert(s);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j)
            for (auto &[s, e] : B.at(i, j).unit_exp()) symbols.insert(s);

    for (const auto &s : symbols) {
        SpanChannel rat{s, RatMat(g, g), RatMat(h, h)};
        SpanChannel surd{s + ":surd", RatMat(g, g), RatMat(h, h)};
        bool any_surd = false;
        auto fill = [&](const PeriodMatrix &P, RatMat &er, RatMat &es) {
            for (std::size_t i = 0; i < P.dim(); ++i)
                for (std::size_t j = 0; j < P.dim(); ++j) {
                    auto it = P.at(i, j).unit_exp().find(s);
                    if (it == P.at(i, j).unit_exp().end()) continue;
                    er.at(i, j) = it->second.rat();
                    es.at(i, j) = it->second.surd();
                    any_surd = any_surd || it->second.surd() != 0;
                }
        };
        fill(A, rat.EA, surd.EA);
        fill(B, rat.EB, surd.EB);
        out.push_back(std::move(rat));
        if (any_surd) out.push_back(std::move(surd));
    }
    return out;
}

/**
 * Hom(A, B) (x) Q along two independent routes.
 *
 * The exact route solves the multiplicative lattice inclusion channel by
 * channel over Q; it is certified under the manifest's independence
 * assumption.  The analytic route takes the Sylvester commutant of the
 * L-invariants over Q_p and reconstructs its rational subspace; it is
 * heuristic.  Both are always computed and compared, never collapsed.
 */
struct HomResult {
    std::vector<RatMat> basis;  // exact rational basis
    std::vector<RatMat> companions;
    std::size_t dim_q = 0;
    bool certified = true;

    std::size_t dim_padic = 0; // dim over Q_p of the Sylvester commutant
    bool padic_certified = true;
    std::size_t dim_reconstructed = 0;
    bool cross_check_ok = true;

    // Integral mode: the saturated lattice (root-of-unity discrepancies
    // allowed, as in passing to a multiple of the candidate isogeny) and
    // the exact-equality sublattice honouring torsion congruences.
    bool integral = false;
    std::vector<RatMat> lattice;
    std::vector<RatMat> exact_lattice;
    std::vector<Rational> lattice_shape;
};

namespace detail {

inline RatMat combine(const std::vector<RatMat> &basis, const std::vector<Rational> &x) {
    RatMat m(basis[0].rows(), basis[0].cols());
    for (std::size_t i = 0; i < basis.size(); ++i) m = m + x[i] * basis[i];
    return m;
}

// Rows of the constraint "every entry of sum x_i B_i is an integer".
inline void append_integrality_rows(std::vector<std::vector<Rational>> &rows,
                                    const std::vector<RatMat> &mats) {
    std::size_t k = mats.size();
    for (std::size_t a = 0; a < mats[0].rows(); ++a)
        for (std::size_t b = 0; b < mats[0].cols(); ++b) {
            std::vector<Rational> row(k);
            for (std::size_t i = 0; i < k; ++i) row[i] = mats[i].at(a, b);
            rows.push_back(std::move(row));
        }
}

} // namespace detail

inline HomResult hom_algebraic(const PeriodMatrix &A, const PeriodMatrix &B,
                               bool integral = false, Int height = 0) {
    std::size_t g = A.dim(), h = B.dim();
    HomResult out;
    auto channels = hom_channels(A, B);
    auto sol = exact_span_solve(channels, g, h);
    out.basis = sol.M;
    out.companions = sol.N;
    out.dim_q = sol.M.size();

    // Analytic route.
    auto syl = sylvester_kernel(A.l_invariant(), B.l_invariant());
    out.dim_padic = syl.basis.size();
    out.padic_certified = syl.certified;
    const Int &p = A.manifest()->prime();
    int N = A.manifest()->precision();
    if (height == 0) height = Int(1000000) * Int(1000000); // 10^12 default ceiling
    std::vector<std::vector<PadicNumber>> vecs;
    for (auto &M : syl.basis) {
        std::vector<PadicNumber> v;
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < h; ++j) v.push_back(M.at(i, j));
        vecs.push_back(std::move(v));
    }
    auto rec = rational_subspace(vecs, p, N, height);
    out.dim_reconstructed = rec.size();

    // Cross-check: same dimension, and mutual containment of spans over Q.
    out.cross_check_ok = (rec.size() == out.dim_q);
    if (out.cross_check_ok && out.dim_q > 0) {
        RatMat both(2 * out.dim_q, g * h);
        for (std::size_t i = 0; i < out.dim_q; ++i)
            for (std::size_t a = 0; a < g; ++a)
                for (std::size_t b = 0; b < h; ++b)
                    both.at(i, a * h + b) = out.basis[i].at(a, b);
        for (std::size_t i = 0; i < rec.size(); ++i)
            for (std::size_t j = 0; j < g * h; ++j) both.at(out.dim_q + i, j) = rec[i][j];
        out.cross_check_ok = (rank(both) == out.dim_q);
    }

    if (integral && out.dim_q > 0) {
        out.integral = true;
        // Saturated lattice: M and N integral.
        std::vector<std::vector<Rational>> rows;
        detail::append_integrality_rows(rows, out.basis);
        detail::append_integrality_rows(rows, out.companions);
        auto build = [&](const std::vector<std::vector<Rational>> &rws) {
            RatMat R(rws.size(), out.dim_q);
            for (std::size_t i = 0; i < rws.size(); ++i)
                for (std::size_t j = 0; j < out.dim_q; ++j) R.at(i, j) = rws[i][j];
            return integrality_lattice(R);
        };
        auto lat = build(rows);
        for (auto &x : lat.basis) out.lattice.push_back(detail::combine(out.basis, x));
        // integrality_lattice reports the constraint lattice's invariant
        // factors; the Hom lattice against Z^k has the reciprocal shape.
        for (auto it = lat.shape.rbegin(); it != lat.shape.rend(); ++it)
            out.lattice_shape.push_back(Rational(1) / *it);

        // Exact-equality sublattice: torsion congruences mod p-1 on top.
        const Int m = p - 1;
        std::vector<std::vector<Rational>> rows2 = rows;
        RatMat EAz(g, g), EBz(h, h);
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < g; ++j) EAz.at(i, j) = Rational(A.at(i, j).zeta_exp());
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < h; ++j) EBz.at(i, j) = Rational(B.at(i, j).zeta_exp());
        for (std::size_t a = 0; a < g; ++a)
            for (std::size_t b = 0; b < h; ++b) {
                std::vector<Rational> row(out.dim_q);
                bool nonzero = false;
                for (std::size_t i = 0; i < out.dim_q; ++i) {
                    RatMat t = EAz * out.basis[i] - out.companions[i] * EBz;
                    row[i] = t.at(a, b) / Rational(m);
                    nonzero = nonzero || row[i] != 0;
                }
                if (nonzero) rows2.push_back(std::move(row));
            }
        auto lat2 = build(rows2);
        for (auto &x : lat2.basis) out.exact_lattice.push_back(detail::combine(out.basis, x));
    }
    return out;
}

/**
 * Hom of the l-adic Tate modules (rationalised).  For l = p this is the
 * Sylvester commutant of the L-invariants over Q_p.  For l != p the unit
 * coordinate dies in the completion, so the dimension is always g*h and
 * the content is integral: torsion congruence moduli modulo the
 * prime-to-l part of p-1.
 */
struct TateHomResult {
    Int ell;
    std::size_t dim = 0;
    bool certified = true;
    std::vector<PadMat> basis;         // only for ell = p
    std::vector<Int> congruence_moduli;
};

inline std::vector<Int> torsion_congruence_moduli(const PeriodMatrix &A, const PeriodMatrix &B,
                                                  const Int &m) {
    std::size_t g = A.dim(), h = B.dim();
    RatMat EAz(g, g), EBz(h, h);
    bool any = false;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            EAz.at(i, j) = Rational(A.at(i, j).zeta_exp());
            any = any || EAz.at(i, j) != 0;
        }
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) {
            EBz.at(i, j) = Rational(B.at(i, j).zeta_exp());
            any = any || EBz.at(i, j) != 0;
        }
    if (!any || m == 1) return {};
    // Constraint E_Az M = N E_Bz (mod m) with N forced to ord_A M ord_B^(-1).
    RatMat right = rat_inverse(B.ord_matrix()) * EBz;
    RatMat ordA = A.ord_matrix();
    RatMat C(g * h, g * h);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < h; ++j)
            for (std::size_t k = 0; k < g; ++k)
                for (std::size_t l = 0; l < h; ++l) {
                    Rational c = 0;
                    if (l == j) c += EAz.at(i, k);
                    c -= ordA.at(i, k) * right.at(l, j);
                    C.at(i * h + j, k * h + l) = c;
                }
    Int D = 1;
    for (std::size_t i = 0; i < g * h; ++i)
        for (std::size_t j = 0; j < g * h; ++j) D = boost::multiprecision::lcm(D, den(C.at(i, j)));
    IntMat Ci(g * h, g * h, Int(0));
    for (std::size_t i = 0; i < g * h; ++i)
        for (std::size_t j = 0; j < g * h; ++j) Ci.at(i, j) = num(C.at(i, j) * Rational(D));
    return congruence_moduli(Ci, D * m);
}

inline TateHomResult hom_tate(const Int &ell, const PeriodMatrix &A, const PeriodMatrix &B) {
    if (!is_prime(ell)) fail(errc::bad_input, "l must be prime");
    const Int &p = A.manifest()->prime();
    if (A.manifest() != B.manifest())
        fail(errc::generator_mismatch, "period matrices over different manifests");
    TateHomResult out;
    out.ell = ell;
    if (ell == p) {
        auto syl = sylvester_kernel(A.l_invariant(), B.l_invariant());
        out.dim = syl.basis.size();
        out.certified = syl.certified;
        out.basis = std::move(syl.basis);
        out.congruence_moduli = torsion_congruence_moduli(A, B, p - 1);
    } else {
        // Completion sanity (throws if some exponent is not l-integral).
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < A.dim(); ++j) gamma(ell, A.at(i, j));
        for (std::size_t i = 0; i < B.dim(); ++i)
            for (std::size_t j = 0; j < B.dim(); ++j) gamma(ell, B.at(i, j));
        out.dim = A.dim() * B.dim();
        out.certified = true;
        out.congruence_moduli = torsion_congruence_moduli(A, B, prime_to_l_part(p - 1, ell));
    }
    return out;
}

/** Isogeny test: an invertible element of Hom(A, B) (x) Q. */
struct IsogenyResult {
    bool isogenous = false;
    bool certified = true;
    RatMat witness;
};

inline IsogenyResult is_isogenous(const PeriodMatrix &A, const PeriodMatrix &B) {
    if (A.dim() != B.dim())
        return {false, true, RatMat()};
    auto hom = hom_algebraic(A, B);
    IsogenyResult out;
    out.certified = hom.certified;
    std::size_t k = hom.basis.size();
    if (k == 0) return out;
    // Search small integer combinations for an invertible one.  If Hom
    // contains an isogeny it contains one with small coordinates w.r.t.
    // the reduced basis; dim <= 4 keeps this exhaustive search tiny.
    std::vector<long> c(k, 0);
    const long R = 3;
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= (2 * R + 1);
    for (std::size_t idx = 1; idx < total; ++idx) {
        std::size_t t = idx;
        for (std::size_t i = 0; i < k; ++i) {
            c[i] = static_cast<long>(t % (2 * R + 1)) - R;
            t /= (2 * R + 1);
        }
        RatMat M(A.dim(), B.dim());
        for (std::size_t i = 0; i < k; ++i) M = M + Rational(c[i]) * hom.basis[i];
        if (det(M) != 0) {
            out.isogenous = true;
            out.witness = M;
            return out;
        }
    }
    return out;
}

/**
 * The three equivalent isogeny criteria for Tate curves (g = 1):
 * an exact multiplicative relation q1^a = q2^b, a nonzero Hom space,
 * and equality of L-invariants (the last checked numerically, so it is
 * only certified in the unequal direction).
 */
struct TriCriterion {
    bool relation = false;
    long rel_a = 0, rel_b = 0;
    bool hom_nonzero = false;
    bool l_equal_at_precision = false;
    bool l_certified = false; // true when inequality is certified
    bool consistent = true;
};

inline TriCriterion tate_tri_criterion(const PeriodMatrix &A, const PeriodMatrix &B,
                                       long bound = 64) {
    if (A.dim() != 1 || B.dim() != 1)
        fail(errc::dimension_mismatch, "tri-criterion applies to Tate curves");
    TriCriterion out;
    const MultElement &q1 = A.at(0, 0), &q2 = B.at(0, 0);
    for (long a = 1; a <= bound && !out.relation; ++a)
        for (long b = -bound; b <= bound && !out.relation; ++b) {
            if (b == 0) continue;
            if (q1.pow(Quad(Rational(a))) == q2.pow(Quad(Rational(b)))) {
                out.relation = true;
                out.rel_a = a;
                out.rel_b = b;
            }
        }
    out.hom_nonzero = hom_algebraic(A, B).dim_q > 0;
    PadicNumber d = A.l_invariant().at(0, 0) - B.l_invariant().at(0, 0);
    int N = A.manifest()->precision();
    out.l_equal_at_precision = d.is_zero() || d.valuation() >= N - 16;
    out.l_certified = !out.l_equal_at_precision;
    out.consistent = (out.relation == out.hom_nonzero) &&
                     (!out.relation || out.l_equal_at_precision) &&
                     (out.l_equal_at_precision || !out.hom_nonzero);
    return out;
}

} // namespace abeloid
