/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#include "rendezvous/adversaries.hpp"
#include "rendezvous/algorithms.hpp"

#include <doctest.h>

using namespace rendezvous;

namespace {

constexpr Color A{0}, B{1};

// Plays prefix plus `periods` periods from distance d; returns the
// configuration at every period boundary (index 0 is after the prefix).
std::vector<Configuration> boundaries(const Algorithm& alg, const AdversaryPlan& plan, const Scalar& d, std::size_t periods, const Rigidity& rig = Rigidity::rigid())
{
    Configuration c = Configuration::initial(plan.model, rig, plan.start_colors.first, plan.start_colors.second, d);
    for (const Event& e : plan.script.prefix) c = apply_event(c, alg, e);
    std::vector<Configuration> out{c};
    for (std::size_t k = 0; k < periods; ++k) {
        for (const Event& e : plan.script.period_instance(k)) c = apply_event(c, alg, e);
        out.push_back(c);
    }
    return out;
}

RuleTable table2(const char* text) { return parse_table(std::string("palette: A B\n") + text).rule_table(); }

}  // namespace

TEST_CASE("lemma23 halves alg1 from B,B")
{
    const AdversaryPlan plan = lemma23_plan(alg1());
    CHECK(plan.start_colors == ColorPair{B, B});
    CHECK(plan.script.period.size() == 15);
    const auto bs = boundaries(alg1(), plan, 8, 10);
    Scalar expect = 8;
    for (const Configuration& c : bs) {
        CHECK(c.distance() == expect);
        CHECK(c.robot(0).light == B);
        CHECK(c.robot(1).light == B);
        CHECK(c.robot(0).waiting());
        expect = expect / 2;
    }
    CHECK(bs.back().distance() == Scalar(1, 128));
    CHECK_THROWS_AS((void)lemma23_plan(swap_colors(alg1())), Error);
}

TEST_CASE("symmetric fsynch against one color")
{
    // Independent oracle: a joint midpoint round gathers, so single moves
    // alternate and each halves the distance. lambda = 0 freezes, lambda = 1 swaps.
    for (const auto& [lambda, factor] : std::vector<std::pair<Scalar, Scalar>>{{Scalar(1, 2), Scalar(1, 2)}, {0, 1}, {1, 1}}) {
        const RuleTable t = parse_table("palette: A\nA A -> A " + lambda.str() + "\n").rule_table();
        const AdversaryPlan plan = symmetric_fsynch(t, {A, A});
        REQUIRE(plan.expected_factor);
        CHECK(*plan.expected_factor == factor);
        const auto bs = boundaries(t, plan, 6, 4);
        for (std::size_t i = 1; i < bs.size(); ++i) CHECK(bs[i].distance() == bs[i - 1].distance() * factor);
    }
}

TEST_CASE("alternating ssynch")
{
    const AdversaryPlan p = alternating_ssynch(one_color_midpoint(), {A, A}, false);
    CHECK(p.model == SchedulerKind::ssynch);
    const auto bs = boundaries(one_color_midpoint(), p, 4, 3);
    CHECK(bs.back().distance() < 4);
    CHECK(bs.back().distance().sign() > 0);
}

TEST_CASE("parametric scripts reach their factor")
{
    struct Case {
        const char* rules;
        const char* id;
        Scalar factor;  // worked out by hand
    };
    const std::vector<Case> cases{
        {"A A -> A 0\nA B -> A 0\nB A -> A 0\nB B -> A 0\n", "lemma13", 1},
        {"A A -> A 1\nA B -> A 0\nB A -> A 0\nB B -> A 0\n", "lemma13", 1},
        {"A A -> A 1/2\nA B -> A 0\nB A -> A 0\nB B -> A 0\n", "lemma13", Scalar(1, 2)},
        {"A A -> B 0\nA B -> A 0\nB A -> A 0\nB B -> A 1\n", "prop12", 1},
        {"A A -> B 1\nA B -> A 0\nB A -> A 0\nB B -> A 1\n", "prop12", 1},
        {"A A -> B 1/2\nA B -> A 0\nB A -> A 0\nB B -> A 0\n", "lemma16", Scalar(1, 2)},
        {"A A -> B 1/2\nA B -> A 0\nB A -> A 1/2\nB B -> A 0\n", "lemma16", Scalar(1, 4)},
        {"A A -> B 1/2\nA B -> A 0\nB A -> A 1\nB B -> A 0\n", "lemma16", Scalar(1, 2)},
        {"A A -> B 1/2\nA B -> A 0\nB A -> B 1\nB B -> A 0\n", "lemma17", Scalar(1, 2)},
        {"A A -> B 1/2\nA B -> A 0\nB A -> B 1/2\nB B -> A 0\n", "lemma17", Scalar(1, 4)},
        {"A A -> B 1/2\nA B -> B 0\nB A -> B 0\nB B -> A 0\n", "lemma18", Scalar(1, 2)},
        {"A A -> B 1/2\nA B -> B 1\nB A -> B 0\nB B -> A 0\n", "lemma18", Scalar(1, 2)},
        {"A A -> B 1/2\nA B -> A 0\nB A -> B 0\nB B -> A 0\n", "lemma18", 1},
        {"A A -> B 1/2\nA B -> A 1/2\nB A -> B 0\nB B -> A 0\n", "lemma18", Scalar(1, 2)},
        {"A A -> B 1/2\nA B -> A 0\nB A -> B 0\nB B -> A 1\n", "lemma19", Scalar(1, 2)},
        {"A A -> B 1/2\nA B -> A 0\nB A -> B 0\nB B -> A 1/2\n", "lemma19", Scalar(1, 4)},
    };
    for (const Case& c : cases) {
        CAPTURE(c.rules);
        const RuleTable t = table2(c.rules);
        const AdversaryPlan plan = named_plan(c.id, t, {A, A});
        REQUIRE(plan.expected_factor);
        CHECK(*plan.expected_factor == c.factor);
        const auto bs = boundaries(t, plan, 1, 3);
        for (std::size_t i = 1; i < bs.size(); ++i) {
            CHECK(bs[i].distance() == bs[i - 1].distance() * c.factor);
            CHECK(bs[i].robot(0).light == bs[0].robot(plan.script.relabel_period && i % 2 ? 1 : 0).light);
        }
    }
}

TEST_CASE("plans reject tables outside their pattern")
{
    CHECK_THROWS_AS((void)lemma13_plan(alg1()), Error);
    CHECK_THROWS_AS((void)lemma19_plan(alg1()), Error);
    CHECK_THROWS_AS((void)prop12_plan(alg1()), Error);
    CHECK_THROWS_AS((void)lemma16_script(1, Lemma16Variant::general), Error);
    CHECK_THROWS_AS((void)lemma17_script(0), Error);
    CHECK_THROWS_AS((void)named_script("lemma99", 0, ""), Error);
    try {
        (void)lemma23_plan(table2("A A -> B 1/2\nA B -> A 1\nB A -> B 0\nB B -> A 1/2\n"));
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition_mismatch);
    }
}

TEST_CASE("dispatch covers every two-color table")
{
    const ClassLEnumeration e(2, LambdaGrid::standard());
    std::map<std::string, int> by_id;
    for (std::uint64_t i = 0; i < e.count(); ++i) {
        const RuleTable t = e.at(i);
        const Dispatch d = dispatch_two_colors(t);
        ++by_id[d.plan.id];
        // Replaying the plan on the original table from the translated start.
        AdversaryPlan p = d.plan;
        p.start_colors = d.start_colors;
        const auto bs = boundaries(t, p, 1, 2);
        REQUIRE(p.expected_factor);
        CHECK(bs[1].distance() == bs[0].distance() * *p.expected_factor);
        CHECK(bs[1].distance().sign() > 0);
    }
    CHECK(by_id.size() == 7);
    CHECK(by_id["lemma23"] == 2);  // alg1 and its color swap
}

TEST_CASE("drive_to_config")
{
    SUBCASE("truncated joint cycle")
    {
        const DrivePlan p = drive_to_config(alg1(), {B, B}, 4, Rigidity::non_rigid(1));
        CHECK(p.initial_distance == 6);
        CHECK(p.construction == "truncate");
        Configuration c = Configuration::initial(SchedulerKind::asynch, Rigidity::non_rigid(1), A, A, p.initial_distance);
        for (const Event& e : p.script.prefix) c = apply_event(c, alg1(), e);
        CHECK(c.distance() == 4);
        CHECK(c.robot(0).light == B);
        CHECK(c.robot(1).light == B);
        CHECK(c.robot(0).waiting());
        CHECK(c.robot(1).waiting());
    }
    SUBCASE("lambda zero scales by one")
    {
        const RuleTable t = table2("A A -> B 0\nA B -> A 0\nB A -> A 0\nB B -> A 0\n");
        const DrivePlan p = drive_to_config(t, {B, B}, 4, Rigidity::non_rigid(1));
        CHECK(p.initial_distance == 4);
        CHECK(p.construction == "scale");
    }
    SUBCASE("one robot turns")
    {
        const DrivePlan p = drive_to_config(alg1(), {A, B}, 4, Rigidity::non_rigid(1));
        CHECK(p.initial_distance == 5);
        Configuration c = Configuration::initial(SchedulerKind::asynch, Rigidity::non_rigid(1), A, A, p.initial_distance);
        for (const Event& e : p.script.prefix) c = apply_event(c, alg1(), e);
        CHECK(c.distance() == 4);
        CHECK(c.robot(0).light == A);
        CHECK(c.robot(1).light == B);
    }
    SUBCASE("rigid only scales")
    {
        const DrivePlan p = drive_to_config(alg1(), {A, B}, 4, Rigidity::rigid());
        CHECK(p.initial_distance == 8);
        CHECK(p.construction == "scale");
        CHECK_THROWS_AS((void)drive_to_config(alg1(), {B, B}, 4, Rigidity::rigid()), Error);
    }
    SUBCASE("A(A) keeps A")
    {
        const RuleTable t = table2("A A -> A 0\nA B -> A 0\nB A -> A 0\nB B -> A 0\n");
        try {
            (void)drive_to_config(t, {B, B}, 1, Rigidity::non_rigid(1));
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::unreachable_target);
        }
    }
}

TEST_CASE("random fair scheduler")
{
    for (SchedulerKind model : {SchedulerKind::asynch, SchedulerKind::ssynch}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Configuration c = Configuration::initial(model, Rigidity::non_rigid(1), A, B, 10);
            const Trace t = run_random_fair(alg1(), c, seed);
            CHECK(t.stop == StopReason::gathered);
            CHECK(t.metadata.schedule == "random:" + std::to_string(seed));
            CHECK(satisfies_fairness(t, {}));
            // Same seed, same trace.
            const Trace again = run_random_fair(alg1(), c, seed);
            REQUIRE(again.steps.size() == t.steps.size());
            for (std::size_t i = 0; i < t.steps.size(); ++i) CHECK(again.steps[i].event == t.steps[i].event);
        }
    }
}

TEST_CASE("fairness validator")
{
    const Algorithm alg = one_color_midpoint();
    ScheduleScript starve;
    starve.period = {Look{0}, FinishCompute{0}, FinishMove{0}};
    const Trace t = run_schedule(Configuration::initial(SchedulerKind::asynch, Rigidity::rigid(), A, A, 1), alg, starve, {.budget = 60, .early_stop = true});
    CHECK_FALSE(satisfies_fairness(t, {8}));

    ScheduleScript fair;
    fair.period = {Look{0}, FinishCompute{0}, FinishMove{0}, Look{1}, FinishCompute{1}, FinishMove{1}};
    const Trace u = run_schedule(Configuration::initial(SchedulerKind::asynch, Rigidity::rigid(), A, A, 1), alg, fair, {.budget = 60, .early_stop = true});
    CHECK(satisfies_fairness(u, {8}));
    CHECK_FALSE(satisfies_fairness(u, {5}));
}
