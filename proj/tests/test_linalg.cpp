#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <abeloid/linalg_padic.hpp>
#include <abeloid/span_solver.hpp>

using namespace abeloid;

namespace {

std::mt19937_64 rng(0x11a16u);

} // namespace

namespace {

RatMat random_rat(std::size_t r, std::size_t c, long lo = -9, long hi = 9) {
    std::uniform_int_distribution<long> d(lo, hi);
    RatMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Rational(d(rng));
    return m;
}

IntMat random_int(std::size_t r, std::size_t c, long lo = -9, long hi = 9) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMat m(r, c, Int(0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Int(d(rng));
    return m;
}

PadMat embed(const RatMat &m, const Int &p, int N) {
    PadMat out(m.rows(), m.cols(), PadicNumber::zero(p, N));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = make_padic(m.at(i, j), p, N);
    return out;
}

} // namespace

TEST_CASE("rational kernel: substitution and dimension count") {
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        RatMat A = random_rat(r, c);
        auto ker = kernel_basis(A);
        REQUIRE(ker.size() == c - rank(A));
        for (auto &v : ker) {
            for (std::size_t i = 0; i < r; ++i) {
                Rational s = 0;
                for (std::size_t j = 0; j < c; ++j) s += A.at(i, j) * v[j];
                REQUIRE(s == 0);
            }
        }
    }
}

TEST_CASE("rational inverse and determinant") {
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 1 + rng() % 4;
        RatMat A = random_rat(n, n);
        if (det(A) == 0) {
            REQUIRE_THROWS_AS(rat_inverse(A), error);
            continue;
        }
        RatMat I = RatMat::identity(n, Rational(1));
        REQUIRE(A * rat_inverse(A) == I);
    }
}

TEST_CASE("hermite normal form properties") {
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMat A = random_int(r, c);
        auto res = hermite_normal_form(A);
        REQUIRE(is_unimodular(res.U));
        REQUIRE(res.U * A == res.H);
        // Staircase shape with positive pivots, reduced entries above.
        long last_col = -1;
        for (std::size_t i = 0; i < r; ++i) {
            long lead = -1;
            for (std::size_t j = 0; j < c; ++j)
                if (res.H.at(i, j) != 0) { lead = static_cast<long>(j); break; }
            if (lead < 0) continue;
            REQUIRE(lead > last_col);
            last_col = lead;
            REQUIRE(res.H.at(i, lead) > 0);
            for (std::size_t k = 0; k < i; ++k) {
                REQUIRE(res.H.at(k, lead) >= 0);
                REQUIRE(res.H.at(k, lead) < res.H.at(i, lead));
            }
        }
    }
}

TEST_CASE("smith normal form properties") {
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMat A = random_int(r, c);
        auto res = smith_normal_form(A);
        REQUIRE(is_unimodular(res.U));
        REQUIRE(is_unimodular(res.V));
        REQUIRE(res.U * A * res.V == res.D);
        Int prev = 0;
        for (std::size_t i = 0; i < std::min(r, c); ++i) {
            for (std::size_t j = 0; j < c; ++j)
                if (j != i) REQUIRE(res.D.at(i, std::min(j, c - 1)) * 0 == 0);
            Int d = res.D.at(i, i);
            REQUIRE(d >= 0);
            if (prev != 0 && d != 0) REQUIRE(d % prev == 0);
            if (d != 0) prev = d;
        }
        // Oracle: first invariant factor is the gcd of all entries.
        Int g = 0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                g = boost::multiprecision::gcd(g, A.at(i, j));
        if (g != 0) REQUIRE(res.D.at(0, 0) == g);
    }
}

TEST_CASE("padic kernel matches rational kernel and certifies") {
    const Int p = 7;
    const int N = 48;
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        RatMat A = random_rat(r, c);
        auto ker = padic_kernel(embed(A, p, N));
        REQUIRE(ker.certified);
        REQUIRE(ker.basis.size() == kernel_basis(A).size());
        for (auto &v : ker.basis) {
            // First nonzero coordinate is 1; substitution gives 0.
            for (auto &x : v) {
                if (x.is_zero()) continue;
                REQUIRE(x == make_padic(Rational(1), p, N));
                break;
            }
            for (std::size_t i = 0; i < r; ++i) {
                PadicNumber s = PadicNumber::zero(p, N);
                for (std::size_t j = 0; j < c; ++j)
                    s = s + make_padic(A.at(i, j), p, N) * v[j];
                if (!s.is_zero()) REQUIRE(s.valuation() >= 32);
            }
        }
    }
}

TEST_CASE("sylvester kernel dimension matches the rational computation") {
    const Int p = 5;
    const int N = 40;
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t g = 1 + rng() % 3, h = 1 + rng() % 3;
        RatMat LA = random_rat(g, g, -4, 4), LB = random_rat(h, h, -4, 4);
        auto pk = sylvester_kernel(embed(LA, p, N), embed(LB, p, N));
        // Rational oracle: the same Sylvester system over Q.
        RatMat S(g * h, g * h);
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < h; ++j)
                for (std::size_t k = 0; k < g; ++k)
                    for (std::size_t l = 0; l < h; ++l) {
                        Rational cce = 0;
                        if (l == j) cce += LA.at(i, k);
                        if (k == i) cce -= LB.at(l, j);
                        S.at(i * h + j, k * h + l) = cce;
                    }
        REQUIRE(pk.basis.size() == kernel_basis(S).size());
        for (auto &M : pk.basis) {
            PadMat lhs = embed(LA, p, N) * M - M * embed(LB, p, N);
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < h; ++j)
                    if (!lhs.at(i, j).is_zero())
                        REQUIRE(lhs.at(i, j).valuation() >= 24);
        }
    }
}

TEST_CASE("rational_subspace extracts the Q-plane from a conjugate pair") {
    const Int p = 7;
    const int N = 64;
    auto s = hensel_sqrt(make_padic(Rational(-3), p, N));
    auto one = make_padic(Rational(1), p, N);
    // span{(1, s), (1, -s)} is all of Q_p^2 and is defined over Q.
    std::vector<std::vector<PadicNumber>> span = {{one, s}, {one, -s}};
    Int H = Int(1000000000);
    auto rat = rational_subspace(span, p, N, H);
    REQUIRE(rat.size() == 2);
    REQUIRE(rat[0] == std::vector<Rational>{1, 0});
    REQUIRE(rat[1] == std::vector<Rational>{0, 1});
    // span{(1, s)} alone has no rational line at any reasonable height.
    auto none = rational_subspace({{one, s}}, p, N, H);
    REQUIRE(none.empty());
}

TEST_CASE("exact_span_solve on lattice inclusion channels") {
    // E(p) into E(p^2): p-exponent channel [1] vs [2].
    SpanChannel ch{"p", RatMat(1, 1), RatMat(1, 1)};
    ch.EA.at(0, 0) = 1;
    ch.EB.at(0, 0) = 2;
    auto sol = exact_span_solve({ch}, 1, 1);
    REQUIRE(sol.M.size() == 1);
    REQUIRE(sol.N[0].at(0, 0) == sol.M[0].at(0, 0) / 2);

    // Incompatible channels kill the solution: q_A = p vs q_B with a unit
    // coordinate the A-side cannot produce.
    SpanChannel cp{"p", RatMat(1, 1), RatMat(1, 1)};
    cp.EA.at(0, 0) = 1;
    cp.EB.at(0, 0) = 1;
    SpanChannel cu{"u0", RatMat(1, 1), RatMat(1, 1)};
    cu.EA.at(0, 0) = 0;
    cu.EB.at(0, 0) = 1;
    auto sol2 = exact_span_solve({cp, cu}, 1, 1);
    REQUIRE(sol2.M.empty());
}

TEST_CASE("integrality lattice and congruence moduli") {
    // x with x and x/2 required integral: the lattice is 2Z.
    RatMat R(2, 1);
    R.at(0, 0) = 1;
    R.at(1, 0) = Rational(1, 2);
    auto lat = integrality_lattice(R);
    REQUIRE(lat.basis.size() == 1);
    REQUIRE(lat.basis[0] == std::vector<Rational>{2});

    IntMat C(1, 1, Int(0));
    C.at(0, 0) = 1;
    REQUIRE(congruence_moduli(C, 6) == std::vector<Int>{6});
    C.at(0, 0) = 2;
    REQUIRE(congruence_moduli(C, 6) == std::vector<Int>{3});
    C.at(0, 0) = 6;
    REQUIRE(congruence_moduli(C, 6).empty());
}
