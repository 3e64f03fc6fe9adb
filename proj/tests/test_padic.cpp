#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <abeloid/padic.hpp>

using namespace abeloid;

// ---------------------------------------------------------------------------
// Independent oracles.  These deliberately avoid the library's own fast
// paths: Teichmuller via the multiplicative-order characterisation, square
// roots via exhaustive residue search plus digit-by-digit lifting, and the
// logarithm via naive exact rational partial sums reduced at the end.
// ---------------------------------------------------------------------------

namespace {

// Oracle: omega(a) is the unique solution of x^(p-1) = 1 with x = a mod p.
Int teichmuller_oracle(const Int &p, const Int &a, int N) {
    Int m = int_pow(p, N);
    // Lift digit by digit: x_{k+1} = x_k^p mod p^(k+1) stabilises, but to be
    // independent we search the root of x^(p-1)-1 by Hensel's recipe on f.
    Int x = floor_mod(a, p);
    for (int k = 1; k < N; ++k) {
        Int mk1 = int_pow(p, k + 1);
        Int fx = floor_mod(mod_pow(x, p - 1, mk1) - 1, mk1);
        Int fpx = (p - 1) * mod_pow(x, p - 2, mk1) % mk1; // f'(x), a unit
        Int step = fx / int_pow(p, k);
        Int corr = floor_mod(-step * mod_inverse(fpx, p), p);
        x = floor_mod(x + corr * int_pow(p, k), mk1);
    }
    return floor_mod(x, m);
}

// Oracle: all square roots of u mod p^N by exhaustive search mod p and
// digit-by-digit lifting of f(x) = x^2 - u.
std::vector<Int> sqrt_oracle(const Int &p, const Int &u, int N) {
    std::vector<Int> roots;
    for (Int r = 1; r < p; ++r)
        if (r * r % p == floor_mod(u, p)) roots.push_back(r);
    for (auto &x : roots) {
        for (int k = 1; k < N; ++k) {
            Int mk1 = int_pow(p, k + 1);
            Int fx = floor_mod(x * x - u, mk1);
            Int step = fx / int_pow(p, k);
            Int corr = floor_mod(-step * mod_inverse(2 * x, p), p);
            x = floor_mod(x + corr * int_pow(p, k), mk1);
        }
    }
    return roots;
}

// Oracle: partial sum of log(1+z) as an exact rational, reduced mod p^N.
// Only usable for small term counts; the tail bound is checked by caller.
Int log_oracle(const Int &p, const Int &z, int N, int terms) {
    Rational s = 0;
    Rational zq(z);
    Rational zn = 1;
    for (int n = 1; n <= terms; ++n) {
        zn *= zq;
        Rational t = zn / n;
        s += (n % 2 == 1) ? t : -t;
    }
    return rat_mod(s, int_pow(p, N));
}

std::mt19937_64 rng(0xab10c5u);

Int random_unit(const Int &p, int N) {
    Int m = int_pow(p, N);
    Int r = 0;
    for (int i = 0; i < N; ++i)
        r = r * p + Int(static_cast<long>(rng() % static_cast<unsigned long>(p.convert_to<long>())));
    r = floor_mod(r, m);
    if (r % p == 0) r += 1;
    return r;
}

} // namespace

TEST_CASE("make_padic decomposes rationals") {
    // 22/7 in Q_5: valuation 0, unit 22 * 7^{-1}.
    auto x = make_padic(Rational(22, 7), 5, 40);
    REQUIRE(x.valuation() == 0);
    REQUIRE(x.precision() == 40);
    Int m = int_pow(5, 40);
    REQUIRE(floor_mod(x.unit() * 7, m) == 22);

    auto y = make_padic(Rational(50, 3), 5, 10);
    REQUIRE(y.valuation() == 2);
    auto z = make_padic(Rational(3, 125), 5, 10);
    REQUIRE(z.valuation() == -3);

    auto zero = make_padic(Rational(0), 7, 12);
    REQUIRE(zero.is_zero());

    REQUIRE_THROWS_AS(make_padic(Rational(1), 2, 10), error);
    REQUIRE_THROWS_AS(make_padic(Rational(1), 9, 10), error);
    REQUIRE_THROWS_AS(make_padic(Rational(1), 7, 0), error);
}

TEST_CASE("field arithmetic round-trips through rationals") {
    const Int p = 7;
    const int N = 30;
    std::uniform_int_distribution<long> coef(-50, 50);
    for (int iter = 0; iter < 200; ++iter) {
        long a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
        if (b == 0 || d == 0) continue;
        Rational x = make_rat(a, b), y = make_rat(c, d);
        auto px = make_padic(x, p, N), py = make_padic(y, p, N);
        REQUIRE(px + py == make_padic(x + y, p, N));
        REQUIRE(px - py == make_padic(x - y, p, N));
        REQUIRE(px * py == make_padic(x * y, p, N));
        if (y != 0) REQUIRE(px / py == make_padic(x / y, p, N));
    }
}

TEST_CASE("cancellation yields exact zero, division by zero refused") {
    auto one = make_padic(Rational(1), 5, 20);
    auto diff = one - one;
    REQUIRE(diff.is_zero());
    REQUIRE_THROWS_AS(one / diff, error);

    PrecisionReport rep;
    auto x = make_padic(Rational(1 + 125), 5, 20);
    auto y = make_padic(Rational(1), 5, 20);
    sub_reported(x, y, rep);
    REQUIRE(rep.cancelled == 3); // 126 - 1 = 125 = 5^3
}

TEST_CASE("teichmuller matches the root-of-unity oracle") {
    for (Int p : {Int(5), Int(7), Int(13)}) {
        const int N = 24;
        for (Int a = 1; a < p; ++a) {
            auto x = make_padic(Rational(a), p, N);
            auto w = teichmuller(x);
            Int expect = teichmuller_oracle(p, a, N);
            REQUIRE(w.unit() == expect);
            // Characterising properties.
            Int m = int_pow(p, N);
            REQUIRE(mod_pow(w.unit(), p - 1, m) == 1);
            REQUIRE(floor_mod(w.unit(), p) == a);
        }
    }
    REQUIRE_THROWS_AS(teichmuller(make_padic(Rational(7), 7, 10)), error);
}

TEST_CASE("iwasawa_log matches the exact-series oracle") {
    const Int p = 7;
    const int N = 12; // small so the rational oracle stays exact
    for (int trial = 0; trial < 20; ++trial) {
        Int z = random_unit(p, N - 1) * p; // z = p * unit, so 1+z is principal
        Int mN = int_pow(p, N);
        z = floor_mod(z, mN);
        if (z == 0) continue;
        auto u = PadicNumber::from_unit(p, 1 + z, 0, N);
        auto lg = iwasawa_log(u);
        // 30 terms: term valuation >= n - log_p(n) > 12 for n > 15.
        Int expect = log_oracle(p, z, N, 30);
        REQUIRE(lg.shifted_residue(0, N) == expect);
    }
}

TEST_CASE("iwasawa_log branch and additivity") {
    const Int p = 11;
    const int N = 48;
    // log_p(p) = 0 and log(omega) = 0 by the branch choice.
    REQUIRE(iwasawa_log(make_padic(Rational(11), p, N)).is_zero());
    auto w = teichmuller(make_padic(Rational(2), p, N));
    REQUIRE(iwasawa_log(w).is_zero());

    // Additivity, digit-exact at absolute precision N.
    for (int trial = 0; trial < 50; ++trial) {
        auto u = PadicNumber::from_unit(p, random_unit(p, N), 0, N);
        auto v = PadicNumber::from_unit(p, random_unit(p, N), 0, N);
        auto lhs = iwasawa_log(u * v);
        auto rhs = iwasawa_log(u) + iwasawa_log(v);
        REQUIRE(lhs.truncated(N) == rhs.truncated(N));
    }
}

TEST_CASE("hensel_sqrt agrees with exhaustive lifting") {
    for (Int p : {Int(5), Int(7), Int(13)}) {
        const int N = 20;
        Int m = int_pow(p, N);
        for (int trial = 0; trial < 25; ++trial) {
            Int u = random_unit(p, N);
            auto x = PadicNumber::from_unit(p, u, 0, N);
            auto roots = sqrt_oracle(p, u, N);
            if (roots.empty()) {
                REQUIRE_THROWS_AS(hensel_sqrt(x), error);
                continue;
            }
            auto r = hensel_sqrt(x);
            REQUIRE(floor_mod(r.unit() * r.unit(), m) == u);
            REQUIRE((r.unit() == roots[0] || r.unit() == roots[1]));
            REQUIRE(floor_mod(r.unit(), p) <= (p - 1) / 2); // sign convention
        }
    }
    // -3 is a square in Q_7 (7 = 1 mod 3) but not in Q_11.
    auto s = hensel_sqrt(make_padic(Rational(-3), 7, 32));
    Int m = int_pow(7, 32);
    REQUIRE(floor_mod(s.unit() * s.unit() + 3, m) == 0);
    REQUIRE_THROWS_AS(hensel_sqrt(make_padic(Rational(-3), 11, 32)), error);
    // Odd valuation has no root.
    REQUIRE_THROWS_AS(hensel_sqrt(make_padic(Rational(7), 7, 32)), error);
    // Even valuation halves.
    auto t = hensel_sqrt(make_padic(Rational(49 * 2 * 2), 7, 32));
    REQUIRE(t.valuation() == 1);
}

TEST_CASE("rational reconstruction round-trips and rejects tall fractions") {
    const Int p = 5;
    std::uniform_int_distribution<long> coef(-99, 99);
    for (int trial = 0; trial < 300; ++trial) {
        long a = coef(rng), b = coef(rng);
        if (b == 0 || b % 5 == 0) continue;
        Rational q = make_rat(a, b);
        auto x = make_padic(q, p, 40);
        auto rec = rational_reconstruct(x, 100);
        REQUIRE(rec.has_value());
        REQUIRE(*rec == q);
    }
    // sqrt(2) in Q_7 fails reconstruction at height 10^6.
    auto s = hensel_sqrt(make_padic(Rational(2), 7, 64));
    auto rec = rational_reconstruct(s, Int(1000000));
    REQUIRE(!rec.has_value());
    // Height bound precondition 2H^2 < p^N.
    REQUIRE_THROWS_AS(rational_reconstruct(make_padic(Rational(1, 3), 5, 4), Int(1000)), error);
}

TEST_CASE("precision propagation across mixed operations") {
    const Int p = 7;
    auto hi = make_padic(Rational(3, 2), p, 50);
    auto lo = make_padic(Rational(5, 4), p, 10);
    REQUIRE((hi * lo).precision() == 10);
    REQUIRE((hi + lo).abs_precision() == 10);
    // Valuation shifts move absolute precision.
    auto small = make_padic(Rational(49), p, 10); // abs precision 12
    REQUIRE((hi + small).abs_precision() == 12);
}
