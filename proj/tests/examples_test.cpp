/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

// Small worked cases for each operation, checked by replaying with the engine.

#include "rendezvous/checking.hpp"

#include <doctest.h>

#include <functional>

using namespace rendezvous;

namespace {

constexpr Color A{0}, B{1}, C{2};

RuleTable two(const std::string& aa, const std::string& ab, const std::string& ba, const std::string& bb)
{
    return parse_table("palette: A B\nA A -> " + aa + "\nA B -> " + ab + "\nB A -> " + ba + "\nB B -> " + bb + "\n").rule_table();
}

// Distance ratio over one period, measured by replay from distance 1.
Scalar measured_factor(const AdversaryPlan& plan, const RuleTable& t)
{
    Configuration c = Configuration::initial(plan.model, Rigidity::rigid(), plan.start_colors.first, plan.start_colors.second, 1);
    for (const Event& e : plan.script.prefix) c = apply_event(c, t, e);
    const Scalar before = c.distance();
    for (const Event& e : plan.script.period_instance(0)) c = apply_event(c, t, e);
    return c.distance() / before;
}

Scalar certified_factor(const AdversaryPlan& plan, const RuleTable& t)
{
    const auto chk = check_certificate(t, Configuration::initial(plan.model, Rigidity::rigid(), plan.start_colors.first, plan.start_colors.second, 1), plan.script);
    REQUIRE_MESSAGE(chk, chk.detail);
    return chk.certificate->factor;
}

ErrorKind error_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error");
    return ErrorKind::parse;
}

}  // namespace

TEST_CASE("asynch steps")
{
    const Configuration start = Configuration::initial(SchedulerKind::asynch, Rigidity::non_rigid(1), A, A, 4);
    Configuration c = apply_event(apply_event(start, alg1(), Look{0}), alg1(), FinishCompute{0});
    CHECK(c.robot(0).light == B);
    CHECK(c.robot(0).moving()->destination == 2);
    const Configuration stepped = apply_event(c, alg1(), MoveStep{0, Scalar(1)});
    CHECK(stepped.robot(0).position == 1);
    CHECK(apply_event(stepped, alg1(), FinishMove{0}).robot(0).waiting());
    CHECK(error_of([&] { (void)apply_event(c, alg1(), MoveStep{0, Scalar(3)}); }) == ErrorKind::invalid_move);

    Configuration rigid = start;
    rigid.rigidity = Rigidity::rigid();
    rigid = apply_event(apply_event(apply_event(rigid, alg1(), Look{0}), alg1(), FinishCompute{0}), alg1(), FinishMove{0});
    CHECK(rigid.robot(0).position == 2);
}

TEST_CASE("rounds from 0 and 8")
{
    const Configuration s = Configuration::initial(SchedulerKind::ssynch, Rigidity::rigid(), A, A, 8);
    const Configuration both = apply_event(s, alg1(), parse_event("round 0,1"));
    CHECK(both.robot(0).position == 4);
    CHECK(both.robot(1).position == 4);
    CHECK(both.robot(1).light == B);
    const Configuration one = apply_event(s, alg1(), parse_event("round 0"));
    CHECK(one.robot(0).position == 4);
    CHECK(one.robot(0).light == B);
    CHECK(one.robot(1).position == 8);
    CHECK(one.robot(1).light == A);

    Configuration nr = s;
    nr.rigidity = Rigidity::non_rigid(1);
    CHECK(apply_event(nr, alg1(), parse_event("round 0,1 trunc 0=1 1=7")).distance() == 6);

    const Configuration f = Configuration::initial(SchedulerKind::fsynch, Rigidity::rigid(), A, A, 8);
    const Configuration g = apply_event(f, one_color_midpoint(), parse_event("round 0,1"));
    CHECK(g.robot(0).position == 4);
    CHECK(gathered_stable(g, one_color_midpoint()));
}

TEST_CASE("run_schedule cases")
{
    ScheduleScript alternate;
    alternate.period = {Look{0}, FinishCompute{0}, FinishMove{0}, Look{1}, FinishCompute{1}, FinishMove{1}};
    const Trace t = run_schedule(Configuration::initial(SchedulerKind::asynch, Rigidity::rigid(), A, B, 5), alg1(), alternate);
    CHECK(t.stop == StopReason::gathered);
    CHECK(t.steps.size() == 3);
    CHECK(t.final_config().robot(0).position == 5);

    Configuration cc = Configuration::initial(SchedulerKind::asynch, Rigidity::rigid(), C, C, 0);
    for (RobotState& r : cc.robots) r.position = 3;
    ScheduleScript halt;
    halt.prefix = {Look{0}, FinishCompute{0}, Look{1}, FinishCompute{1}};
    const Trace u = run_schedule(cc, alg2(), halt);
    CHECK(u.stop == StopReason::terminated);
    CHECK(both_terminated(u.final_config()));
    CHECK(check_termination(u));

    const Trace empty = run_schedule(cc, alg2(), ScheduleScript{});
    CHECK(empty.steps.empty());
}

TEST_CASE("gathered_stable cases")
{
    Configuration c = Configuration::initial(SchedulerKind::asynch, Rigidity::rigid(), A, A, 0);
    for (RobotState& r : c.robots) r.position = 3;
    CHECK(gathered_stable(c, alg1()));
    Configuration moving = c;
    moving.robots[1].phase = Moving{5, 3};
    CHECK_FALSE(gathered_stable(moving, alg1()));
    Configuration apart = c;
    apart.robots[1].position = 4;
    CHECK_FALSE(gathered_stable(apart, alg1()));
}

TEST_CASE("symmetric fsynch halves from 8")
{
    const AdversaryPlan p = symmetric_fsynch(one_color_midpoint(), {A, A});
    Configuration c = Configuration::initial(p.model, Rigidity::rigid(), A, A, 8);
    std::vector<Scalar> seen{c.distance()};
    for (const Event& e : p.script.unrolled(3)) {
        c = apply_event(c, one_color_midpoint(), e);
        if (c.distance() != seen.back()) seen.push_back(c.distance());
    }
    CHECK(seen == std::vector<Scalar>{8, 4, 2, 1});
    CHECK(certified_factor(p, one_color_midpoint()) == Scalar(1, 2));
}

TEST_CASE("alternating ssynch cases")
{
    const RuleTable halves = two("B 1/2", "A 1/2", "B 1/2", "A 1/2");
    const AdversaryPlan p = alternating_ssynch(halves, {A, A}, false);
    Configuration c = Configuration::initial(SchedulerKind::ssynch, Rigidity::rigid(), A, A, 8);
    for (const Event& e : p.script.unrolled(2)) {
        const Scalar before = c.distance();
        c = apply_event(c, halves, e);
        CHECK(c.distance() == before / 2);
    }

    const RuleTable jump = parse_table("palette: A\nA A -> A 1\n").rule_table();
    const AdversaryPlan q = alternating_ssynch(jump, {A, A}, true);
    Configuration d = Configuration::initial(SchedulerKind::ssynch, Rigidity::rigid(), A, A, 8);
    for (const Event& e : q.script.unrolled(3)) {
        d = apply_event(d, jump, e);
        CHECK(d.distance() == 8);
    }

    const AdversaryPlan r = alternating_ssynch(jump, {A, A}, false);
    const Trace t = run_schedule(Configuration::initial(SchedulerKind::ssynch, Rigidity::rigid(), A, A, 8), jump, r.script);
    CHECK(t.stop == StopReason::gathered);
}

TEST_CASE("lemma factors beyond the grid")
{
    // lemma16: B(A) = (A, lambda), factor |1 - lambda| / 2.
    const auto l16 = [](const char* lambda) { return two("B 1/2", "A 0", std::string("A ") + lambda, "A 0"); };
    CHECK(measured_factor(lemma16_plan(l16("0")), l16("0")) == Scalar(1, 2));
    CHECK(measured_factor(lemma16_plan(l16("3")), l16("3")) == 1);
    CHECK(certified_factor(lemma16_plan(l16("1")), l16("1")) == Scalar(1, 2));

    // lemma19: B(B) = (A, lambda), factor |lambda| / 2.
    const auto l19 = [](const char* lambda) { return two("B 1/2", "A 0", "B 0", std::string("A ") + lambda); };
    CHECK(measured_factor(lemma19_plan(l19("1")), l19("1")) == Scalar(1, 2));
    CHECK(measured_factor(lemma19_plan(l19("-1")), l19("-1")) == Scalar(1, 2));
    CHECK(error_of([] { (void)lemma19_script(0); }) == ErrorKind::precondition_mismatch);

    // lemma17: B(A) = (B, lambda), factor |lambda| / 2.
    const auto l17 = [](const char* lambda) { return two("B 1/2", "A 0", std::string("B ") + lambda, "A 0"); };
    CHECK(measured_factor(lemma17_plan(l17("1")), l17("1")) == Scalar(1, 2));
    CHECK(measured_factor(lemma17_plan(l17("1/2")), l17("1/2")) == Scalar(1, 4));
    CHECK(error_of([&] { (void)lemma17_plan(l17("0")); }) == ErrorKind::precondition_mismatch);

    // lemma18 cases.
    const RuleTable to_b = two("B 1/2", "B 0", "B 0", "A 0");
    CHECK(to_string(Lemma18Case::to_b_not1) == "to_B_not1");
    CHECK(measured_factor(lemma18_plan(to_b), to_b) == Scalar(1, 2));
    const RuleTable to_b1 = two("B 1/2", "B 1", "B 0", "A 0");
    CHECK(measured_factor(lemma18_plan(to_b1), to_b1) == Scalar(1, 2));
    const RuleTable stays = two("B 1/2", "A 1/2", "B 0", "A 0");
    CHECK(certified_factor(lemma18_plan(stays), stays) == Scalar(1, 2));
}

TEST_CASE("lemma23 from distance 1")
{
    const AdversaryPlan p = lemma23_plan(alg1());
    Configuration c = Configuration::initial(SchedulerKind::asynch, Rigidity::rigid(), B, B, 8);
    for (const Event& e : p.script.unrolled(1)) c = apply_event(c, alg1(), e);
    CHECK(c.distance() == 4);
    CHECK(c.robot(0).light == B);
    CHECK(c.robot(1).light == B);

    Configuration d = Configuration::initial(SchedulerKind::asynch, Rigidity::rigid(), B, B, 1);
    for (const Event& e : p.script.unrolled(10)) d = apply_event(d, alg1(), e);
    CHECK(d.distance() == Scalar(1, 1024));

    CHECK(error_of([] { (void)lemma23_plan(alg3()); }) == ErrorKind::precondition_mismatch);
}

TEST_CASE("random fair cases")
{
    const Configuration aa = Configuration::initial(SchedulerKind::asynch, Rigidity::non_rigid(1), A, A, 10);
    const Trace t = run_random_fair(alg3(), aa, 1, {8});
    CHECK(t.stop == StopReason::gathered);
    CHECK(gathered_stable(t.final_config(), alg3()));

    const Configuration s = Configuration::initial(SchedulerKind::ssynch, Rigidity::non_rigid(1), A, B, 10);
    const Trace u = run_random_fair(alg1(), s, 4, {2});
    for (const TraceStep& step : u.steps) CHECK(std::get<Round>(step.event).active.size() == 2);
}

TEST_CASE("certificate cases")
{
    ScheduleScript joint;
    joint.period = {Look{0}, Look{1}, FinishCompute{0}, FinishCompute{1}, FinishMove{0}, FinishMove{1}};
    const auto chk = check_certificate(alg1(), Configuration::initial(SchedulerKind::asynch, Rigidity::rigid(), A, A, 4), joint);
    CHECK_FALSE(chk);
    CHECK(chk.rejection == Rejection::zero_distance);
}

TEST_CASE("opposite colors gather within one chase per delta")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Trace t = run_random_fair(alg1(), Configuration::initial(SchedulerKind::asynch, Rigidity::non_rigid(1), A, B, 10), seed);
        REQUIRE(t.stop == StopReason::gathered);
        CHECK(check_gathering_bound(t, 1, 10));
        // The A-robot is robot 0 throughout.
        std::uint64_t moving_cycles = 0;
        for (std::size_t i = 0; i < t.steps.size(); ++i)
            if (std::holds_alternative<FinishMove>(t.steps[i].event) && std::get<FinishMove>(t.steps[i].event).robot == 0 &&
                t.config_before(i).robot(0).moving()->destination != t.config_before(i).robot(0).moving()->start)
                ++moving_cycles;
        CHECK(moving_cycles <= 10);
    }
}

TEST_CASE("termination cases")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Trace t = run_random_fair(alg2(), Configuration::initial(SchedulerKind::asynch, Rigidity::non_rigid(1), A, A, 10), seed);
        CHECK(check_termination(t));
    }
    // Hand-built: robot 0 terminated while 4 apart.
    Trace bad;
    bad.initial = Configuration::initial(SchedulerKind::asynch, Rigidity::rigid(), C, C, 4);
    Configuration after = bad.initial;
    after.robots[0].phase = Terminated{};
    bad.steps.push_back({FinishCompute{0}, after});
    CHECK_FALSE(check_termination(bad));
}
