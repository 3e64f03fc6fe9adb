#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <abeloid/mult.hpp>

using namespace abeloid;

namespace {

ManifestPtr man7() { return std::make_shared<GeneratorManifest>(Int(7), 48); }

std::mt19937_64 rng(0x5eedu);

} // namespace

TEST_CASE("coordinates of parsed entries") {
    auto man = man7();
    auto x = parse_entry("(1+p) * p", man);
    REQUIRE(x.zeta_exp() == 0);
    REQUIRE(x.p_exp() == Quad(Rational(1)));
    REQUIRE(x.unit_exp().at("u0") == Quad(Rational(1)));
    REQUIRE(x.unit_coord() == make_padic(Rational(1), 7, 48));

    auto y = parse_entry("zeta^3 * p^(1/2)", man);
    REQUIRE(y.zeta_exp() == 3);
    REQUIRE(y.p_exp() == Quad(Rational(1, 2)));
    REQUIRE(!y.is_genuine());

    // Rational bases decompose through prime factorisation: sign and the
    // Teichmuller character land in the zeta exponent.
    auto z = parse_entry("-50", man);
    Int expected_zeta = floor_mod(Int(3) + man->zeta_dlog(2) + 2 * man->zeta_dlog(5), Int(6));
    REQUIRE(z.zeta_exp() == expected_zeta);
    REQUIRE(z.unit_exp().count("q2") == 1);
    REQUIRE(z.unit_exp().at("q5") == Quad(Rational(2)));
}

TEST_CASE("teichmuller zeta is the lift of the smallest primitive root") {
    auto man = man7();
    REQUIRE(man->root() == 3);
    Int m = int_pow(7, 48);
    REQUIRE(floor_mod(man->zeta().unit(), 7) == 3);
    REQUIRE(mod_pow(man->zeta().unit(), 6, m) == 1);
}

TEST_CASE("group law and pow preconditions") {
    auto man = man7();
    auto x = parse_entry("p^(2) * (1+p)^(3)", man);
    auto y = x.pow(Quad(Rational(1, 2)));
    REQUIRE(y.p_exp() == Quad(Rational(1)));
    REQUIRE(y.unit_exp().at("u0") == Quad(Rational(3, 2)));

    // Fractional power of a torsion element is refused.
    auto z = parse_entry("zeta", man);
    REQUIRE_THROWS_MATCHES(z.pow(Quad(Rational(1, 2))), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::StartsWith("FRACTIONAL_TORSION")));
    // zeta^3 raised to 1/3 is fine.
    auto w = parse_entry("zeta^3", man).pow(Quad(Rational(1, 3)));
    REQUIRE(w.zeta_exp() == 1);

    // Irrational exponents live on principal units only.
    Quad s3 = Quad::sqrt_of(Rational(-3));
    auto u = parse_entry("(1+p)", man).pow(s3);
    REQUIRE(u.unit_exp().at("u0") == s3);
    REQUIRE_THROWS_MATCHES(parse_entry("p", man).pow(s3), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::StartsWith("PADIC_EXPONENT_ON_NONUNIT")));
    // ... and need sqrt(d) to exist: -3 is a non-residue at p = 11.
    auto man11 = std::make_shared<GeneratorManifest>(Int(11), 48);
    REQUIRE_THROWS_MATCHES(parse_entry("(1+p)", man11).pow(s3), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::StartsWith("NON_RESIDUE")));
}

TEST_CASE("parse/print round-trip is the identity on coordinates") {
    auto man = man7();
    const char *samples[] = {
        "p",
        "zeta^5",
        "(1+p)^(3/2)",
        "22/7",
        "-3",
        "(3+p)",
        "(1+p)^(sqrt(-3)) * p^2",
        "zeta^2 * p^(1/2) * (1+p)^(1 + 2*sqrt(-3))",
        "2^(4) * 5^(-1)",
    };
    for (const char *s : samples) {
        auto x = parse_entry(s, man);
        auto y = parse_entry(x.str(), man);
        REQUIRE(x == y);
    }
    REQUIRE_THROWS_AS(parse_entry("p^^2", man), error);
    REQUIRE_THROWS_AS(parse_entry("(2+q)", man), error);
    REQUIRE_THROWS_AS(parse_entry("0", man), error);
}

TEST_CASE("log is a homomorphism killing p and torsion") {
    auto man = man7();
    REQUIRE(parse_entry("p", man).log().is_zero());
    REQUIRE(parse_entry("zeta^4", man).log().is_zero());
    // log((1+p)^e) = e * log(1+p).
    auto x = parse_entry("(1+p)^(5/3)", man);
    REQUIRE(x.log() == make_padic(Rational(5, 3), 7, 48) * man->log_one_plus_p());

    std::uniform_int_distribution<long> c(-9, 9);
    for (int t = 0; t < 40; ++t) {
        long a = c(rng), b = c(rng);
        if (a == 0 || b == 0) continue;
        auto u = MultElement::from_rational(man, make_rat(a, 1));
        auto v = MultElement::from_rational(man, make_rat(b, 1));
        REQUIRE((u * v).log().truncated(40) == (u.log() + v.log()).truncated(40));
    }

    // Numeric log agrees with a direct series evaluation of the value.
    auto e = MultElement::from_rational(man, Rational(10));
    PadicNumber direct = iwasawa_log(make_padic(Rational(10), 7, 48));
    REQUIRE(e.log().truncated(40) == direct.truncated(40));
}

TEST_CASE("gamma completions") {
    auto man = man7();
    auto x = parse_entry("zeta * p^(1/2) * (1+p)^(2)", man);

    // l = p: nothing is lost.
    auto cp = gamma(7, x);
    REQUIRE(cp.torsion == 1);
    REQUIRE(cp.torsion_mod == 6);
    REQUIRE(cp.unit_exp.at("u0") == Quad(Rational(2)));
    REQUIRE(cp.p_exp == Quad(Rational(1, 2)));

    // l = 5: unit coordinate dies, torsion keeps the prime-to-5 part of 6.
    auto c5 = gamma(5, x);
    REQUIRE(c5.torsion_mod == 6);
    REQUIRE(c5.unit_exp.empty());
    REQUIRE(c5.p_exp == Quad(Rational(1, 2))); // 1/2 is a 5-adic integer

    // l = 3: torsion modulus drops to 2.
    auto c3 = gamma(3, x);
    REQUIRE(c3.torsion_mod == 2);
    REQUIRE(c3.torsion == 1);

    // l = 2: p^(1/2) is not 2-adically integral.
    REQUIRE_THROWS_AS(gamma(2, x), error);
}

TEST_CASE("declared unit symbols") {
    auto man = man7();
    man->declare_unit("eps", make_padic(Rational(1 + 7), 7, 48), "(1+p)");
    auto e = parse_entry("eps^(2)", man);
    REQUIRE(e.unit_exp().at("eps") == Quad(Rational(2)));
    // eps was declared as 1+p itself, so its coordinate is 1.
    REQUIRE(e.unit_coord() == make_padic(Rational(2), 7, 48));
    // Elements over distinct manifests never mix.
    auto other = man7();
    REQUIRE_THROWS_MATCHES(parse_entry("p", man) * parse_entry("p", other), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::StartsWith("GENERATOR_MISMATCH")));
}
