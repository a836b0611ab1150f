#include "doctest.h"

#include "demi/checkers.hpp"
#include "demi/core.hpp"
#include "demi/instances.hpp"
#include "test_util.hpp"

using namespace demi;

TEST_CASE("apply: identity leaves the matrix unchanged") {
    SplitMix64 rng(11);
    SymmetricMatrix C = test::random_symmetric(6, rng, -5, 5);
    CHECK(apply(C, Permutation::identity(6)) == C);
}

TEST_CASE("apply: direct index substitution") {
    SymmetricMatrix C = SymmetricMatrix::from_rows({{0, 1, 3}, {1, 0, 2}, {3, 2, 0}});
    SymmetricMatrix expected = SymmetricMatrix::from_rows({{0, 1, 2}, {1, 0, 3}, {2, 3, 0}});
    CHECK(apply(C, Permutation::from_images({2, 1, 3})) == expected);
}

TEST_CASE("apply rejects size mismatch") {
    SymmetricMatrix C(3);
    CHECK_THROWS_AS(apply(C, Permutation::identity(4)), std::invalid_argument);
}

TEST_CASE("compose: hand example and identity") {
    Permutation phi = Permutation::from_images({2, 1, 3});
    CHECK(compose(phi, Permutation::identity(3)) == phi);
    CHECK(compose(phi, Permutation::from_images({3, 1, 2})) ==
          Permutation::from_images({3, 2, 1}));
    CHECK_THROWS_AS(compose(phi, Permutation::identity(4)), std::invalid_argument);
}

TEST_CASE("apply/compose coherence, exhaustive at n=4") {
    SplitMix64 rng(7);
    SymmetricMatrix C = test::random_symmetric(4, rng, -4, 4);
    std::vector<int> base{1, 2, 3, 4};
    std::vector<std::vector<int>> all;
    do all.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));
    for (const auto& f : all)
        for (const auto& g : all) {
            Permutation phi = Permutation::from_images(f);
            Permutation psi = Permutation::from_images(g);
            CHECK(apply(apply(C, phi), psi) == apply(C, compose(phi, psi)));
        }
}

TEST_CASE("apply/compose coherence, randomized up to n=64") {
    SplitMix64 rng(19);
    for (int n : {8, 17, 33, 64}) {
        SymmetricMatrix C = test::random_symmetric(n, rng, -9, 9);
        Permutation phi = test::random_permutation(n, rng);
        Permutation psi = test::random_permutation(n, rng);
        CHECK(apply(apply(C, phi), psi) == apply(C, compose(phi, psi)));
    }
}

TEST_CASE("apply preserves symmetry") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(7));
        SymmetricMatrix C = test::random_symmetric(n, rng, -9, 9);
        Permutation phi = test::random_permutation(n, rng);
        SymmetricMatrix P = apply(C, phi);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) CHECK(P(i, j) == P(j, i));
    }
}

TEST_CASE("reverse: involution and hand example") {
    CHECK(reverse(Permutation::identity(3)) == Permutation::from_images({3, 2, 1}));
    SplitMix64 rng(3);
    Permutation pi = test::random_permutation(9, rng);
    CHECK(reverse(reverse(pi)) == pi);
}

TEST_CASE("reverse keeps the Demidenko property") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        GenConfig cfg;
        cfg.n = 4 + static_cast<int>(seed % 4);
        cfg.seed = seed;
        cfg.bumps = 2;
        cfg.symmetric_sum = true;
        SymmetricMatrix C = gen_demidenko(cfg);
        auto [scrambled, phi] = scramble(C, seed + 100);
        Permutation back = inverse(phi);
        REQUIRE(check_demidenko(apply(scrambled, back)).holds);
        CHECK(check_demidenko(apply(scrambled, reverse(back))).holds);
    }
}

TEST_CASE("inverse undoes a permutation") {
    SplitMix64 rng(5);
    Permutation phi = test::random_permutation(8, rng);
    CHECK(compose(phi, inverse(phi)) == Permutation::identity(8));
    CHECK(compose(inverse(phi), phi) == Permutation::identity(8));
}

TEST_CASE("permutation validation") {
    CHECK_THROWS_AS(Permutation::from_images({1, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::from_images({0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::from_images({}), std::invalid_argument);
}

TEST_CASE("matrix construction validates symmetry") {
    CHECK_THROWS_AS(SymmetricMatrix::from_rows({{0, 1}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(SymmetricMatrix::from_rows({{0, 1}, {1}}), std::invalid_argument);
}

TEST_CASE("partial permutation slot discipline") {
    PartialPermutation pi(5, 2, 4);
    CHECK(pi.prefix_len() == 1);
    CHECK(pi.at(1) == 2);
    CHECK(pi.at(5) == 4);
    CHECK(pi.at(3) == PartialPermutation::kUnset);
    CHECK(pi.free_indices() == std::vector<int>{1, 3, 5});
    CHECK_THROWS_AS(pi.fix_next(2), std::logic_error);
    pi.fix_next(5);
    pi.fix_next(1);
    pi.fix_next(3);
    CHECK(pi.complete());
    CHECK(pi.to_permutation() == Permutation::from_images({2, 5, 1, 3, 4}));
    CHECK_THROWS_AS(pi.fix_next(3), std::logic_error);
    CHECK_THROWS_AS(PartialPermutation(5, 3, 3), std::invalid_argument);
}

TEST_CASE("parse: integer matrix with comments") {
    ParsedMatrix p = parse_matrix("# line metric\n3\n0 1 3\n1 0 2\n3 2 0\n");
    CHECK(p.scale_digits == 0);
    CHECK(p.matrix == SymmetricMatrix::from_rows({{0, 1, 3}, {1, 0, 2}, {3, 2, 0}}));
}

TEST_CASE("parse: asymmetry is rejected with coordinates") {
    try {
        parse_matrix("2\n0 1\n2 0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("asymmetric at (1,2)/(2,1)") != std::string::npos);
    }
}

TEST_CASE("parse: bundled fixture") {
    ParsedMatrix p = parse_matrix(test::read_file(test::fixture_path("demidenko_5x5.txt")));
    CHECK(p.matrix.size() == 5);
    CHECK(p.matrix == test::fixture_5x5());
}

TEST_CASE("parse: malformed input names line and column") {
    try {
        parse_matrix("2\n0 x\nx 0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
        CHECK(std::string(e.what()).find("non-numeric") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_matrix(""), ParseError);
    CHECK_THROWS_AS(parse_matrix("2\n0 1\n1 0\nextra\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("2\n0 1 5\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("0\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("2 2\n0 1\n1 0\n"), ParseError);
}

TEST_CASE("parse: decimal entries are scaled to integers") {
    ParsedMatrix p = parse_matrix("2\n0 0.25\n0.25 1\n");
    CHECK(p.scale_digits == 2);
    CHECK(p.matrix == SymmetricMatrix::from_rows({{0, 25}, {25, 100}}));
    CHECK(format_scaled(p.matrix(1, 2), p.scale_digits) == "0.25");
    CHECK(format_scaled(p.matrix(2, 2), p.scale_digits) == "1");
    CHECK(format_scaled(-25, 2) == "-0.25");

    CHECK_THROWS_AS(parse_matrix("1\n0.1234567890123\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("1\n10000000000000\n"), ParseError);
}

TEST_CASE("serialize/parse round-trip is value-exact for integers") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(8));
        SymmetricMatrix C = test::random_symmetric(n, rng, -50, 50);
        ParsedMatrix again = parse_matrix(serialize_matrix(C));
        CHECK(again.matrix == C);
        CHECK(again.scale_digits == 0);
    }
    // whitespace normalization only
    std::string text = "3\n0   1 3\n1 0\t2\n3 2 0\n";
    CHECK(serialize_matrix(parse_matrix(text).matrix) == "3\n0 1 3\n1 0 2\n3 2 0\n");
}

TEST_CASE("submatrix picks rows and columns") {
    SymmetricMatrix C = test::fixture_5x5();
    std::vector<int> keep{2, 3, 4};
    SymmetricMatrix sub = submatrix(C, keep);
    CHECK(sub.size() == 3);
    CHECK(sub(1, 2) == C(2, 3));
    CHECK(sub(1, 3) == C(2, 4));
    CHECK(sub(2, 3) == C(3, 4));
}
