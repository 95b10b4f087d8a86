#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mackeycoh/error.hpp"
#include "mackeycoh/grading.hpp"

using mackeycoh::Grading;
using mackeycoh::ParsedGrading;
using mackeycoh::parse_grading;

TEST_CASE("parse basic expressions") {
    ParsedGrading g = parse_grading("2 - 2*L0 + L1", 3, 2);
    CHECK(g.grading.c == 2);
    CHECK(g.grading.a == std::vector<long long>{-2, 1});
    CHECK(g.notes.empty());

    g = parse_grading("-L0", 3, 2);
    CHECK(g.grading.c == 0);
    CHECK(g.grading.a == std::vector<long long>{-1, 0});

    g = parse_grading("  4", 5, 1);
    CHECK(g.grading.c == 4);
    CHECK(g.grading.a == std::vector<long long>{0});

    g = parse_grading("3*L1 - 2 + L1 - L0", 2, 3);
    CHECK(g.grading.c == -2);
    CHECK(g.grading.a == std::vector<long long>{-1, 4, 0});

    g = parse_grading("0", 2, 0);
    CHECK(g.grading.is_zero());
}

TEST_CASE("parse rotation numbers and normalization notes") {
    // L(m) names the rotation by m; only its p-valuation matters.
    ParsedGrading g = parse_grading("L(3)", 2, 2);
    CHECK(g.grading.a == std::vector<long long>{1, 0});
    REQUIRE(g.notes.size() == 1);
    CHECK(g.notes[0] == "L(3) -> L0");

    g = parse_grading("L(2)", 2, 2);
    CHECK(g.grading.a == std::vector<long long>{0, 1});
    CHECK(g.notes.empty());

    g = parse_grading("L(1)", 2, 2);
    CHECK(g.grading.a == std::vector<long long>{1, 0});
    CHECK(g.notes.empty());

    g = parse_grading("L(6)", 3, 2);
    CHECK(g.grading.a == std::vector<long long>{0, 1});
    REQUIRE(g.notes.size() == 1);
    CHECK(g.notes[0] == "L(6) -> L1");

    CHECK_THROWS_AS(parse_grading("L(4)", 2, 2), mackeycoh::IndexError);
    CHECK_THROWS_AS(parse_grading("L(0)", 2, 2), mackeycoh::IndexError);
    CHECK_THROWS_AS(parse_grading("L2", 2, 2), mackeycoh::IndexError);
    CHECK_THROWS_AS(parse_grading("L0", 2, 0), mackeycoh::IndexError);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_grading("", 2, 2), mackeycoh::ParseError);
    CHECK_THROWS_AS(parse_grading("2 +", 2, 2), mackeycoh::ParseError);
    CHECK_THROWS_AS(parse_grading("L", 2, 2), mackeycoh::ParseError);
    CHECK_THROWS_AS(parse_grading("2 * 3", 2, 2), mackeycoh::ParseError);
    CHECK_THROWS_AS(parse_grading("x", 2, 2), mackeycoh::ParseError);
    CHECK_THROWS_AS(parse_grading("2 2", 2, 2), mackeycoh::ParseError);
    CHECK_THROWS_AS(parse_grading("L(", 2, 2), mackeycoh::ParseError);
    CHECK_THROWS_AS(parse_grading("L(1", 2, 2), mackeycoh::ParseError);
}

TEST_CASE("dimension bookkeeping") {
    const Grading g{2, 1, {2, -1}};
    CHECK(g.fixed_dim(0) == 3);
    CHECK(g.fixed_dim(1) == -1);
    CHECK(g.fixed_dim(2) == 1);
    CHECK(g.total_dim() == 3);
    CHECK_FALSE(g.is_zero());
    CHECK_FALSE(g.even());  // c odd

    const Grading h{2, 4, {1, 0}};
    CHECK(h.even());
    CHECK(Grading{1, 0, {0}}.is_zero());
}

TEST_CASE("derived gradings") {
    const Grading g{2, 1, {2, -1}};

    const Grading d = g.anderson_dual();
    CHECK(d.c == 2);
    CHECK(d.a == std::vector<long long>{-3, 1});

    const Grading hd = g.anderson_hom_dual();
    CHECK(hd.c == 1);
    CHECK(hd.a == std::vector<long long>{-3, 1});

    const Grading q = g.quotient();
    CHECK(q.n == 1);
    CHECK(q.c == 1);
    CHECK(q.a == std::vector<long long>{-1});

    const Grading r = g.restricted(1);
    CHECK(r.n == 1);
    CHECK(r.c == g.fixed_dim(1));
    CHECK(r.a == std::vector<long long>{2});

    const Grading r0 = g.restricted(0);
    CHECK(r0.n == 0);
    CHECK(r0.c == g.total_dim());

    CHECK(g.plus_c(3).c == 4);
    CHECK(g.plus_lambda(0).a == std::vector<long long>{3, -1});
}

TEST_CASE("render and round trip") {
    const Grading g{2, 1, {2, -1}};
    CHECK(g.render() == "1 + 2*L0 - L1");
    CHECK(parse_grading(g.render(), 3, 2).grading == g);

    CHECK(Grading{2, 0, {0, 0}}.render() == "0");
    CHECK(Grading{2, -3, {0, 1}}.render() == "-3 + L1");
    CHECK(Grading{1, 0, {-1}}.render() == "-L0");
    CHECK(Grading{1, 5, {1}}.render() == "5 + L0");

    for (long long c : {-4, 0, 7}) {
        for (long long a0 : {-2, 0, 1}) {
            for (long long a1 : {-1, 0, 3}) {
                const Grading x{2, c, {a0, a1}};
                CHECK(parse_grading(x.render(), 5, 2).grading == x);
            }
        }
    }
}
