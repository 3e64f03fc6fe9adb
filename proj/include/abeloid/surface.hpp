#pragma once

#include "hom.hpp"
#include "phin.hpp"

namespace abeloid {

/**
 * H^2 of a product of two Tate curves E_{q1} x E_{q2} as a 6-dimensional
 * filtered (phi, N)-module with rational structure, in the basis
 *   a, b0, b1, b2, b3, c
 * built from the wedge square of the rank-2 pieces (generators
 * e1, e2 per factor; see pairing_gram for the explicit 2-forms).
 */
namespace wedge {

// Generators of the 4-dim space: 0 = e1^(1), 1 = e2^(1), 2 = e1^(2), 3 = e2^(2).
using TwoForm = std::map<std::pair<int, int>, Rational>;

inline TwoForm two_form(std::initializer_list<std::pair<std::pair<int, int>, Rational>> t) {
    TwoForm f;
    for (auto &[k, v] : t) f[k] = v;
    return f;
}

// The six basis classes of H^2 as 2-forms.
inline const std::vector<TwoForm> &h2_basis() {
    static const std::vector<TwoForm> basis = {
        two_form({{{0, 2}, 1}}),              // a  = e1^(1) ^ e1^(2)
        two_form({{{0, 3}, 1}, {{1, 2}, 1}}), // b0 = e1^(1)^e2^(2) + e2^(1)^e1^(2)
        two_form({{{0, 3}, 1}, {{1, 2}, -1}}),// b1 = e1^(1)^e2^(2) - e2^(1)^e1^(2)
        two_form({{{0, 1}, 1}}),              // b2 = e1^(1) ^ e2^(1)
        two_form({{{2, 3}, 1}}),              // b3 = e1^(2) ^ e2^(2)
        two_form({{{1, 3}, 1}}),              // c  = e2^(1) ^ e2^(2)
    };
    return basis;
}

// Sign of e_i^e_j^e_k^e_l against the volume form e_0^e_1^e_2^e_3.
inline int volume_sign(int i, int j, int k, int l) {
    int idx[4] = {i, j, k, l};
    for (int s = 0; s < 4; ++s)
        for (int t = s + 1; t < 4; ++t)
            if (idx[s] == idx[t]) return 0;
    int sign = 1;
    for (int s = 0; s < 4; ++s)
        for (int t = s + 1; t < 4; ++t)
            if (idx[s] > idx[t]) sign = -sign;
    return sign;
}

inline Rational wedge_pair(const TwoForm &x, const TwoForm &y) {
    Rational out = 0;
    for (auto &[ij, cx] : x)
        for (auto &[kl, cy] : y)
            out += cx * cy *
                   Rational(volume_sign(ij.first, ij.second, kl.first, kl.second));
    return out;
}

} // namespace wedge

/** Gram matrix of the wedge pairing in the (a, b0, b1, b2, b3, c) basis. */
inline RatMat pairing_gram() {
    const auto &basis = wedge::h2_basis();
    RatMat g(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) g.at(i, j) = wedge::wedge_pair(basis[i], basis[j]);
    return g;
}

struct WedgeSquareModule {
    RatMat gram;
    RationalStructure structure; // A = <a>, B0 = <b0>, B1 = <b1,b2,b3>, C = <c>
    FilteredPhiNModule module;
    std::vector<Sym> fil2_sym;                      // spanning vector of Fil^2, symbolic
    std::vector<std::vector<Sym>> fil1_annihilator; // one row: Gram * fil2_sym
    PadVec fil2_vec;

    RaskindVerdict raskind(const IndependenceFacts &facts = {}) const {
        return raskind_check(module, structure, &fil1_annihilator, facts);
    }
};

namespace detail {

inline RationalStructure wedge_structure(const Int &p) {
    RationalStructure R;
    R.dimA = 1;
    R.dimB0 = 1;
    R.dimB1 = 3;
    R.dimC = 1;
    R.phi_V = RatMat(6, 6);
    R.phi_V.at(0, 0) = 1;
    for (std::size_t i = 1; i <= 4; ++i) R.phi_V.at(i, i) = Rational(p);
    R.phi_V.at(5, 5) = Rational(p * p);
    R.N_V = RatMat(6, 6);
    R.N_V.at(1, 5) = 1; // N(c) = b0
    R.N_V.at(0, 1) = 2; // N(b0) = 2a
    R.validate(p);
    return R;
}

// Assemble the module once Fil^2 = span(v) is known (numeric + symbolic).
inline WedgeSquareModule wedge_module(const Int &p, int N, PadVec v,
                                      std::vector<Sym> v_sym) {
    RatMat gram = pairing_gram();
    PadicNumber z = PadicNumber::zero(p, N);
    // Fil^1 = v-perp: kernel of the single row Gram * v.
    PadMat row(1, 6, z);
    for (std::size_t j = 0; j < 6; ++j) {
        PadicNumber s = z;
        for (std::size_t k = 0; k < 6; ++k) s = s + make_padic(gram.at(j, k), p, N) * v[k];
        row.at(0, j) = s;
    }
    auto fil1 = padic_kernel(row).basis;
    if (fil1.size() != 5) fail(errc::degenerate_pairing, "v-perp is not a hyperplane");

    std::vector<Sym> ann(6);
    for (std::size_t j = 0; j < 6; ++j) {
        Sym s;
        for (std::size_t k = 0; k < 6; ++k) s = s + Quad(gram.at(j, k)) * v_sym[k];
        ann[j] = s;
    }

    PadicNumber one = make_padic(Rational(1), p, N);
    PadicNumber ps = make_padic(Rational(p), p, N);
    PadMat phi(6, 6, z), mono(6, 6, z);
    phi.at(0, 0) = one;
    for (std::size_t i = 1; i <= 4; ++i) phi.at(i, i) = ps;
    phi.at(5, 5) = ps * ps;
    mono.at(1, 5) = one;
    mono.at(0, 1) = one + one;

    // The constructor's nesting check verifies v in v-perp, i.e. Q(v,v) = 0
    // digit-exactly.
    FilteredPhiNModule D(p, N, std::move(phi), std::move(mono),
                         {{1, fil1}, {2, {v}}});
    return WedgeSquareModule{std::move(gram), wedge_structure(p), std::move(D),
                             std::move(v_sym), {std::move(ann)}, std::move(v)};
}

} // namespace detail

/**
 * H^2(E_{q1} x E_{q2}) with the Mazur filtration: Fil^2 spanned by
 *   v = L1 L2 a + ((L1+L2)/2) b0 + ((L1-L2)/2) b1 + c,
 * Fil^1 = v-perp under the wedge pairing.
 */
inline WedgeSquareModule build_h2(const MultElement &q1, const MultElement &q2) {
    if (q1.manifest() != q2.manifest())
        fail(errc::generator_mismatch, "periods over different manifests");
    const ManifestPtr &man = q1.manifest();
    const Int &p = man->prime();
    int N = man->precision();
    for (const MultElement *q : {&q1, &q2}) {
        const Quad &o = q->ord();
        if (!o.is_rational() || o.as_rational() <= 0)
            fail(errc::bad_period, "period must have positive valuation");
    }
    auto linv = [&](const MultElement &q) {
        PeriodMatrix Q(man, 1);
        Q.at(0, 0) = q;
        return std::pair{Q.l_invariant().at(0, 0), Q.l_invariant_sym().at(0, 0)};
    };
    auto [l1, l1s] = linv(q1);
    auto [l2, l2s] = linv(q2);
    PadicNumber z = PadicNumber::zero(p, N);
    PadicNumber one = make_padic(Rational(1), p, N);
    PadicNumber half = make_padic(Rational(1, 2), p, N);
    PadVec v(6, z);
    v[0] = l1 * l2;
    v[1] = (l1 + l2) * half;
    v[2] = (l1 - l2) * half;
    v[5] = one;
    Quad h(Rational(1, 2));
    std::vector<Sym> vs(6);
    vs[0] = l1s * l2s;
    vs[1] = h * (l1s + l2s);
    vs[2] = h * (l1s + (-l2s));
    vs[5] = Sym(Rational(1));
    return detail::wedge_module(p, N, std::move(v), std::move(vs));
}

/**
 * Picard rank of E_{q1} x E_{q2}: 3 when the curves are isogenous
 * (L-invariants agree), else 2.  Decided on the exact symbolic side;
 * an explicit multiplicative relation is also searched as a witness.
 */
struct PicardRank {
    int rank = 2;
    bool relation_found = false;
    long rel_a = 0, rel_b = 0;
};

inline PicardRank picard_rank(const MultElement &q1, const MultElement &q2, long bound = 64) {
    if (q1.manifest() != q2.manifest())
        fail(errc::generator_mismatch, "periods over different manifests");
    const ManifestPtr &man = q1.manifest();
    auto lsym = [&](const MultElement &q) {
        PeriodMatrix Q(man, 1);
        Q.at(0, 0) = q;
        return Q.l_invariant_sym().at(0, 0);
    };
    PicardRank out;
    Sym diff = lsym(q1) + (-lsym(q2));
    out.rank = diff.is_zero() ? 3 : 2;
    for (long a = 1; a <= bound && !out.relation_found; ++a)
        for (long b = -bound; b <= bound && !out.relation_found; ++b) {
            if (b == 0) continue;
            if (q1.pow(Quad(Rational(a))) == q2.pow(Quad(Rational(b)))) {
                out.relation_found = true;
                out.rel_a = a;
                out.rel_b = b;
            }
        }
    if (out.relation_found && out.rank != 3)
        fail(errc::internal, "exact relation found but L-invariants differ symbolically");
    return out;
}

/**
 * Prop 4.7 correspondence between normalized isotropic vectors and
 * ordinary weight-2 filtrations: v (c-coordinate 1) with Q(v,v) = 0 and
 * Q(v, N^2 c) != 0 yields Fil^2 = span(v), Fil^1 = v-perp; and back.
 */
inline std::map<int, std::vector<PadVec>>
ordinary_filtration_from_vector(const PadVec &v, const Int &p, int N) {
    if (v.size() != 6) fail(errc::dimension_mismatch, "vector must have 6 coordinates");
    if (!(v[5] == make_padic(Rational(1), p, N)))
        fail(errc::bad_input, "c-coordinate must be exactly 1");
    RatMat gram = pairing_gram();
    PadicNumber z = PadicNumber::zero(p, N);
    auto pair_with = [&](const PadVec &x, const PadVec &y) {
        PadicNumber s = z;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                s = s + make_padic(gram.at(i, j), p, N) * x[i] * y[j];
        return s;
    };
    if (!pair_with(v, v).is_zero()) fail(errc::not_isotropic, "Q(v,v) != 0");
    // N^2 c = 2a.
    PadVec n2c(6, z);
    n2c[0] = make_padic(Rational(2), p, N);
    if (pair_with(v, n2c).is_zero())
        fail(errc::degenerate_pairing, "Q(v, N^2 c) = 0");
    PadMat row(1, 6, z);
    for (std::size_t j = 0; j < 6; ++j) {
        PadicNumber s = z;
        for (std::size_t k = 0; k < 6; ++k) s = s + make_padic(gram.at(j, k), p, N) * v[k];
        row.at(0, j) = s;
    }
    auto fil1 = padic_kernel(row).basis;
    return {{1, fil1}, {2, {v}}};
}

inline PadVec vector_from_filtration(const std::map<int, std::vector<PadVec>> &fil,
                                     const Int &p, int N) {
    auto it = fil.find(2);
    if (it == fil.end() || it->second.size() != 1)
        fail(errc::shape_mismatch, "Fil^2 must be a line");
    PadVec v = it->second[0];
    if (v.size() != 6) fail(errc::dimension_mismatch, "vector must have 6 coordinates");
    if (v[5].is_zero()) fail(errc::bad_input, "Fil^2 line has no c-component");
    PadicNumber inv = v[5].inverse();
    for (auto &x : v) x = x * inv;
    return v;
}

/**
 * Example 4.5 family: v = (lambda^2 - gamma) a + lambda b0 - gamma b2
 * + b3 + c with gamma irrational.  The a-coefficient is the one forced
 * by isotropy under the pairing above.
 */
inline WedgeSquareModule example_non_admissible(const Quad &gamma, const Quad &lambda,
                                                const Int &p, int N, Int height = 0) {
    if (gamma.is_rational()) fail(errc::gamma_rational, "gamma is rational: example degenerates");
    PadicNumber g = gamma.eval(p, N);
    if (height == 0) height = Int(1000000);
    if (rational_reconstruct(g, height))
        fail(errc::gamma_rational, "gamma reconstructs as rational at the configured height");
    PadicNumber l = lambda.eval(p, N);
    PadicNumber z = PadicNumber::zero(p, N);
    PadicNumber one = make_padic(Rational(1), p, N);
    PadVec v(6, z);
    v[0] = l * l - g;
    v[1] = l;
    v[3] = -g;
    v[4] = one;
    v[5] = one;
    std::vector<Sym> vs(6);
    vs[0] = Sym(lambda * lambda + (-gamma));
    vs[1] = Sym(lambda);
    vs[3] = Sym(-gamma);
    vs[4] = Sym(Rational(1));
    vs[5] = Sym(Rational(1));
    return detail::wedge_module(p, N, std::move(v), std::move(vs));
}

} // namespace abeloid
