#pragma once

#include <string>
#include <vector>

#include "linalg_integer.hpp"

namespace abeloid {

/**
 * One coordinate channel of the multiplicative lattice-inclusion problem
 * Q_A (x) M = N (x) Q_B: E_A[i][k] is this channel's exponent in entry
 * (i,k) of the period matrix of A, likewise E_B.  Channels are the
 * p-exponent, the lifted torsion exponent, and one channel per declared
 * unit generator and surd component.
 */
struct SpanChannel {
    std::string name;
    RatMat EA; // g x g
    RatMat EB; // h x h
};

struct SpanSolution {
    std::vector<RatMat> M; // g x h basis of the rational Hom space
    std::vector<RatMat> N; // companions with E_A M = N E_B on every channel
};

/**
 * Exact rational solution of the simultaneous system
 *   E_A^(ch) * M = N * E_B^(ch)   for all channels,
 * jointly in (M, N).  Solutions whose M-part vanishes (pure N-freedom
 * from a row-deficient E_B) are dropped: the returned M form a basis of
 * the projection, each with one valid companion N.
 */
inline SpanSolution exact_span_solve(const std::vector<SpanChannel> &channels,
                                     std::size_t g, std::size_t h) {
    std::size_t nm = g * h, unknowns = 2 * nm;
    std::size_t rows = channels.size() * g * h;
    RatMat sys(rows == 0 ? 1 : rows, unknowns);
    std::size_t r = 0;
    for (const auto &ch : channels) {
        if (ch.EA.rows() != g || ch.EA.cols() != g || ch.EB.rows() != h || ch.EB.cols() != h)
            fail(errc::dimension_mismatch, "channel " + ch.name + " has wrong shape");
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < h; ++j) {
                for (std::size_t k = 0; k < g; ++k)
                    sys.at(r, k * h + j) += ch.EA.at(i, k); // (E_A M)_{ij}
                for (std::size_t k = 0; k < h; ++k)
                    sys.at(r, nm + i * h + k) -= ch.EB.at(k, j); // (N E_B)_{ij}
                ++r;
            }
    }
    auto ker = kernel_basis(sys);
    // Reduce the kernel with M-columns leading so pure-N rows separate out.
    RatMat K(ker.size() == 0 ? 1 : ker.size(), unknowns);
    for (std::size_t i = 0; i < ker.size(); ++i)
        for (std::size_t j = 0; j < unknowns; ++j) K.at(i, j) = ker[i][j];
    auto pivots = rref(K);
    SpanSolution out;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] >= nm) continue; // M-part is zero
        RatMat M(g, h), N(g, h);
        for (std::size_t a = 0; a < g; ++a)
            for (std::size_t b = 0; b < h; ++b) {
                M.at(a, b) = K.at(i, a * h + b);
                N.at(a, b) = K.at(i, nm + a * h + b);
            }
        out.M.push_back(std::move(M));
        out.N.push_back(std::move(N));
    }
    return out;
}

/**
 * The lattice {x in Q^k : R x in Z^m} for a constraint matrix R of full
 * column rank, computed as the dual of the row lattice of R.  Returns the
 * basis as columns and the diagonal of the Hermite row basis over the
 * common denominator (the "shape" of the lattice against Z^k).
 */
struct IntegralityLattice {
    std::vector<std::vector<Rational>> basis; // k vectors of length k
    std::vector<Rational> shape;              // invariant factors of x -> R x vs Z^m
};

inline IntegralityLattice integrality_lattice(const RatMat &R) {
    std::size_t m = R.rows(), k = R.cols();
    Int d = 1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j)
            d = boost::multiprecision::lcm(d, den(R.at(i, j)));
    IntMat P(m, k, Int(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Rational v = R.at(i, j) * Rational(d);
            P.at(i, j) = num(v);
        }
    auto hnf = hermite_normal_form(P);
    // Top k rows of H are the row-lattice basis; full column rank required.
    RatMat G(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        bool nonzero = false;
        for (std::size_t j = 0; j < k; ++j) {
            if (i < hnf.H.rows()) G.at(i, j) = Rational(hnf.H.at(i, j)) / Rational(d);
            nonzero = nonzero || G.at(i, j) != 0;
        }
        if (!nonzero)
            fail(errc::dimension_mismatch, "constraint matrix is column-rank deficient");
    }
    RatMat W = rat_inverse(G); // columns = dual basis vectors
    IntegralityLattice out;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Rational> v(k);
        for (std::size_t i = 0; i < k; ++i) v[i] = W.at(i, j);
        out.basis.push_back(std::move(v));
    }
    IntMat Gd(k, k, Int(0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Rational v = G.at(i, j) * Rational(d);
            Gd.at(i, j) = num(v);
        }
    for (const Int &e : elementary_divisors(Gd)) out.shape.push_back(Rational(e) / Rational(d));
    return out;
}

/**
 * Moduli of the congruence system C x = 0 (mod m): via Smith reduction
 * the system splits into d_i * y_i = 0 (mod m), so each rank-direction
 * contributes the modulus m / gcd(d_i, m).  Moduli of 1 are dropped.
 */
inline std::vector<Int> congruence_moduli(const IntMat &C, const Int &m) {
    std::vector<Int> out;
    for (const Int &di : elementary_divisors(C)) {
        Int g = boost::multiprecision::gcd(floor_mod(di, m) == 0 ? m : floor_mod(di, m), m);
        Int mod = m / g;
        if (mod > 1) out.push_back(mod);
    }
    return out;
}

} // namespace abeloid
