#include <catch2/catch_amalgamated.hpp>

#include <abeloid/scenarios.hpp>

using namespace abeloid;
using Catch::Matchers::MessageMatches;
using Catch::Matchers::StartsWith;

TEST_CASE("counterexample scenario reproduces the quadruple (1, 0, 2, 1)") {
    for (long p : {7L, 13L}) {
        auto rep = counterexample(Int(p), 64);
        REQUIRE(rep.passed());
        REQUIRE(rep.item("hom_tate_p").value == 1);
        REQUIRE(rep.item("hom_alg").value == 0);
        REQUIRE(rep.item("end_tate_p").value == 2);
        REQUIRE(rep.item("end_alg").value == 1);
        REQUIRE(rep.item("generator_on_line").value == 1);
        REQUIRE(rep.item("slope_reconstructs").value == 0);
        for (const auto &it : rep.items) REQUIRE(it.certified);
    }
}

TEST_CASE("counterexample prime constraints") {
    REQUIRE_THROWS_MATCHES(counterexample(Int(11)), error,
                           MessageMatches(StartsWith("PRIME_CONSTRAINT")));
    REQUIRE_THROWS_MATCHES(counterexample(Int(5)), error,
                           MessageMatches(StartsWith("PRIME_CONSTRAINT")));
    REQUIRE_THROWS_MATCHES(counterexample(Int(3)), error,
                           MessageMatches(StartsWith("PRIME_CONSTRAINT")));
}

TEST_CASE("counterexample accepts any declared principal unit as epsilon") {
    auto rep = counterexample(Int(7), 64, "(1+p)^2");
    REQUIRE(rep.passed());
}

TEST_CASE("counterexample is deterministic") {
    auto r1 = counterexample(Int(7), 64);
    auto r2 = counterexample(Int(7), 64);
    REQUIRE(r1.items.size() == r2.items.size());
    for (std::size_t i = 0; i < r1.items.size(); ++i) {
        REQUIRE(r1.items[i].name == r2.items[i].name);
        REQUIRE(r1.items[i].value == r2.items[i].value);
        REQUIRE(r1.items[i].certified == r2.items[i].certified);
    }
    REQUIRE(r1.notes == r2.notes);
}

TEST_CASE("appendix pair: no algebraic homs, full l-adic line") {
    for (long ell : {2L, 3L, 5L}) {
        auto rep = appendix_tate_pair(Int(7), Int(ell));
        REQUIRE(rep.passed());
        REQUIRE(rep.item("hom_alg").value == 0);
        REQUIRE(rep.item("hom_tate_l").value == 1);
    }
    REQUIRE_THROWS_MATCHES(appendix_tate_pair(Int(7), Int(7)), error,
                           MessageMatches(StartsWith("SAME_PRIME")));
    REQUIRE_THROWS_MATCHES(appendix_tate_pair(Int(7), Int(4)), error,
                           MessageMatches(StartsWith("BAD_INPUT")));
}

TEST_CASE("l-independence of the Tate-module Hom dimension") {
    auto rep = l_independence(Int(7), Int(2));
    REQUIRE(rep.passed());
    REQUIRE(rep.item("dim_l").value == 3);
    REQUIRE(rep.item("dim_p").value == 2);
    REQUIRE(l_independence(Int(13), Int(3)).passed());

    auto iso = l_independence(Int(7), Int(2), 64, /*isogenous_variant=*/true);
    REQUIRE(iso.passed());
    REQUIRE(iso.item("dim_l").value == 3);
    REQUIRE(iso.item("dim_p").value == 3);

    REQUIRE_THROWS_MATCHES(l_independence(Int(7), Int(7)), error,
                           MessageMatches(StartsWith("SAME_PRIME")));
}

TEST_CASE("product of Tate curves: surjectivity and admissibility") {
    auto iso = product_positive(Int(7), "p", "p^2");
    REQUIRE(iso.passed());
    REQUIRE(iso.item("hom_alg").value == 1);
    REQUIRE(iso.item("hom_tate_p").value == 1);
    REQUIRE(iso.item("raskind_dim_q").value == 3);
    REQUIRE(iso.item("raskind_dim_qp").value == 3);
    REQUIRE(iso.item("picard_rank").value == 3);

    auto non = product_positive(Int(7), "p", "(1+p)*p");
    REQUIRE(non.passed());
    REQUIRE(non.item("hom_alg").value == 0);
    REQUIRE(non.item("hom_tate_p").value == 0);
    REQUIRE(non.item("raskind_dim_q").value == 2);
    REQUIRE(non.item("raskind_dim_qp").value == 2);
    REQUIRE(non.item("picard_rank").value == 2);

    auto same = product_positive(Int(7), "p^2*(1+p)", "p^2*(1+p)");
    REQUIRE(same.passed());
    REQUIRE(same.item("hom_alg").value == 1);
    REQUIRE(same.item("raskind_dim_q").value == 3);
    REQUIRE(same.item("picard_rank").value == 3);

    // Unit periods are rejected along the way.
    REQUIRE_THROWS_AS(product_positive(Int(7), "(1+p)", "p"), error);
}
