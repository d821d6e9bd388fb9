/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#include "rendezvous/algorithms.hpp"
#include "rendezvous/model.hpp"
#include "rendezvous/scalar.hpp"

#include <doctest.h>

#include <random>

using namespace rendezvous;

TEST_CASE("convex_point")
{
    CHECK(convex_point(0, 4, Scalar(1, 2)) == 2);
    CHECK(convex_point(0, 4, 1) == 4);
    CHECK(convex_point(0, 4, 0) == 0);
    CHECK(convex_point(0, 4, 2) == 8);
    CHECK(convex_point(4, 0, Scalar(1, 4)) == 3);
}

TEST_CASE("on_segment")
{
    CHECK(on_segment(2, 0, 4));
    CHECK(on_segment(4, 0, 4));
    CHECK_FALSE(on_segment(5, 0, 4));
    CHECK(on_segment(3, 4, 0));
    CHECK(on_segment(7, 7, 7));
}

TEST_CASE("scalar canonical form")
{
    CHECK(Scalar(6, 4).str() == "3/2");
    CHECK(Scalar(-6, -4).str() == "3/2");
    CHECK(Scalar(3, -6).str() == "-1/2");
    CHECK(Scalar(0, 5).str() == "0");
    CHECK(Scalar::parse("10/4") == Scalar(5, 2));
    CHECK(Scalar::parse("-0.25") == Scalar(-1, 4));
    CHECK(Scalar::parse("+7") == 7);
    CHECK(Scalar::parse("1.5").str() == "3/2");
    CHECK_THROWS(Scalar::parse("1/0"));
    CHECK_THROWS(Scalar::parse("abc"));
    CHECK_THROWS(Scalar::parse(""));
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), std::domain_error);
}

TEST_CASE("scalar arithmetic is exact")
{
    Scalar third(1, 3);
    CHECK(third + third + third == 1);
    Scalar x(1);
    for (int i = 0; i < 200; ++i) x = x / 2;
    CHECK_FALSE(x.is_zero());
    for (int i = 0; i < 200; ++i) x = x * 2;
    CHECK(x == 1);
    CHECK(Scalar(7, 2).ceil() == 4);
    CHECK(Scalar(-7, 2).ceil() == -3);
    CHECK(Scalar(4).ceil() == 4);
    CHECK(Scalar(-3, 4).abs() == Scalar(3, 4));
}

TEST_CASE("scalar text round trip")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const long num = static_cast<long>(rng() % 2'000'001) - 1'000'000;
        const long den = static_cast<long>(rng() % 99'999) + 1;
        const Scalar s(num, den);
        CHECK(Scalar::parse(s.str()) == s);
        CHECK(Scalar::parse(s.str()).str() == s.str());
    }
}

TEST_CASE("midpoint symmetry and absorbing coincidence")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const Scalar a(static_cast<long>(rng() % 1000) - 500, static_cast<long>(rng() % 50) + 1);
        const Scalar b(static_cast<long>(rng() % 1000) - 500, static_cast<long>(rng() % 50) + 1);
        const Scalar l(static_cast<long>(rng() % 100) - 50, static_cast<long>(rng() % 20) + 1);
        CHECK(convex_point(a, b, Scalar(1, 2)) == convex_point(b, a, Scalar(1, 2)));
        CHECK(convex_point(a, a, l) == a);
    }
}

TEST_CASE("built-in tables")
{
    const RuleTable t = alg1();
    CHECK(t.describe() == "A(A)=(B,1/2) A(B)=(A,1) B(A)=(B,0) B(B)=(A,0)");
    CHECK(alg3().describe() ==
          "A(A)=(B,1/2) A(B)=(A,1) A(C)=(A,0) B(A)=(B,0) B(B)=(C,0) B(C)=(B,1) C(A)=(C,1) C(B)=(C,0) C(C)=(A,0)");

    const Algorithm a2 = alg2();
    const Color A{0}, B{1}, C{2};
    CHECK(std::get<Rule>(a2.decide(A, A, false)) == Rule{B, Scalar(1, 2)});
    CHECK(std::get<Rule>(a2.decide(A, A, true)) == Rule{C, 0});
    CHECK(std::holds_alternative<Terminate>(a2.decide(C, C, true)));
    CHECK(std::get<Rule>(a2.decide(C, C, false)) == Rule{A, 0});
    CHECK(std::get<Rule>(a2.decide(B, A, false)) == Rule{B, 1});
    CHECK(std::get<Rule>(a2.decide(C, B, false)) == Rule{C, 0});
    // Every rule into C is a null move.
    for (Color me : a2.palette().colors())
        for (Color other : a2.palette().colors())
            for (bool c : {false, true})
                {
                    const Action act = a2.decide(me, other, c);
                    if (const auto* r = std::get_if<Rule>(&act); r && r->next == C) CHECK(r->lambda.is_zero());
                }
}

TEST_CASE("alg2 entry by entry")
{
    // me, other, coincident -> next color and lambda, or terminate
    struct Row {
        const char* me;
        const char* other;
        bool coincident;
        const char* next;  // nullptr: terminate
        Scalar lambda;
    };
    const std::vector<Row> listing{
        {"A", "A", false, "B", Scalar(1, 2)}, {"A", "A", true, "C", 0}, {"A", "B", false, "A", 1}, {"A", "B", true, "A", 1},
        {"A", "C", false, "A", 1},            {"A", "C", true, "C", 0}, {"B", "A", false, "B", 1}, {"B", "A", true, "C", 0},
        {"B", "B", false, "A", 0},            {"B", "B", true, "A", 0}, {"B", "C", false, "B", 1}, {"B", "C", true, "C", 0},
        {"C", "A", false, "C", 0},            {"C", "A", true, "C", 0}, {"C", "B", false, "C", 0}, {"C", "B", true, "C", 0},
        {"C", "C", false, "A", 0},            {"C", "C", true, nullptr, 0},
    };
    const Algorithm a2 = alg2();
    const Palette& p = a2.palette();
    for (const Row& r : listing) {
        CAPTURE(r.me);
        CAPTURE(r.other);
        CAPTURE(r.coincident);
        const Action act = a2.decide(p.parse(r.me), p.parse(r.other), r.coincident);
        if (r.next == nullptr) {
            CHECK(std::holds_alternative<Terminate>(act));
        } else {
            REQUIRE(std::holds_alternative<Rule>(act));
            CHECK(std::get<Rule>(act) == Rule{p.parse(r.next), r.lambda});
        }
    }
    // Not alg1 on {A,B}: the B-robot chases an A-robot.
    CHECK(std::get<Rule>(a2.decide(Color{1}, Color{0}, false)) != alg1().lookup(Color{1}, Color{0}));
}

TEST_CASE("alg3 keeps its color exactly when the colors differ")
{
    const RuleTable t = alg3();
    for (Color me : t.palette().colors())
        for (Color other : t.palette().colors()) CHECK((t.lookup(me, other).next == me) == (me != other));
}

TEST_CASE("table files")
{
    const Algorithm a = parse_table("# two colors\npalette: A B\nA A -> B 1/2\nA B -> A 1\nB A -> B 0\nB B -> A 0\n", "file");
    REQUIRE(a.is_class_l());
    CHECK(a.rule_table() == alg1());
    CHECK(parse_table(format_table(alg3())).rule_table() == alg3());

    const Algorithm ext = parse_table(format_table(alg2()));
    CHECK_FALSE(ext.is_class_l());
    CHECK(format_table(ext) == format_table(Algorithm(alg2())));

    SUBCASE("missing entry")
    {
        CHECK_THROWS_AS((void)parse_table("palette: A B\nA A -> B 1/2\nA B -> A 1\nB A -> B 0\n"), Error);
    }
    SUBCASE("color outside palette")
    {
        try {
            (void)parse_table("palette: A B\nA A -> C 1/2\nA B -> A 1\nB A -> B 0\nB B -> A 0\n");
            FAIL("accepted an unknown color");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::palette);
        }
    }
    SUBCASE("terminate needs coincidence")
    {
        CHECK_THROWS_AS((void)parse_table("palette: A\nA A !coincident -> TERMINATE\nA A coincident -> A 0\n"), Error);
    }
    SUBCASE("duplicate entry")
    {
        CHECK_THROWS_AS((void)parse_table("palette: A\nA A -> A 0\nA A -> A 1\n"), Error);
    }
}

TEST_CASE("enumeration")
{
    const ClassLEnumeration e(2, LambdaGrid::standard());
    CHECK(e.count() == 1296);
    CHECK(e.index_of(alg1()) == 954u);
    CHECK(e.at(954) == alg1());
    CHECK(ClassLEnumeration(3, LambdaGrid::standard()).index_of(alg3()).has_value());
    CHECK(ClassLEnumeration(1, LambdaGrid::parse("1/2")).at(0) == one_color_midpoint());
    for (std::uint64_t i = 0; i < e.count(); i += 37) CHECK(e.index_of(e.at(i)) == i);
    CHECK(ClassLEnumeration(2, LambdaGrid::parse("0,1/2")).count() == 256);
    CHECK(ClassLEnumeration(1, LambdaGrid::standard()).count() == 3);
    CHECK(ClassLEnumeration(3, LambdaGrid::standard()).count() == 387'420'489u);
    CHECK_THROWS(LambdaGrid::parse("0,0"));
    CHECK_FALSE(e.index_of(alg3()).has_value());
}

TEST_CASE("color swap")
{
    const RuleTable s = swap_colors(alg1());
    CHECK(s.describe() == "A(A)=(B,0) A(B)=(A,0) B(A)=(B,1) B(B)=(A,1/2)");
    CHECK(swap_colors(s) == alg1());
}

TEST_CASE("resolve algorithm")
{
    CHECK(resolve_algorithm("alg1").rule_table() == alg1());
    CHECK(resolve_algorithm("enum:2:0,1/2,1:954").rule_table() == alg1());
    CHECK(resolve_algorithm("one-color").rule_table().palette().size() == 1);
    CHECK_THROWS_AS((void)resolve_algorithm("no-such-table"), Error);
    CHECK_THROWS_AS((void)resolve_algorithm("enum:2:0,1/2,1:1296"), Error);
}

TEST_CASE("event text")
{
    for (const char* line : {"look 0", "compute 1", "movestep 0 3/2", "movestep 1 dest", "endmove 0", "round 0,1 trunc 0=1 1=7", "round 1"}) {
        CHECK(format_event(parse_event(line)) == line);
    }
    CHECK(relabel(parse_event("round 0 trunc 0=5")) == parse_event("round 1 trunc 1=5"));
    CHECK_THROWS_AS((void)parse_event("jump 0"), Error);
    CHECK_THROWS_AS((void)parse_event("look"), Error);
    CHECK_THROWS_AS((void)parse_event("movestep 0 x"), Error);
}
