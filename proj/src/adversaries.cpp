/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#include "rendezvous/adversaries.hpp"

#include "rendezvous/algorithms.hpp"

#include <algorithm>

namespace rendezvous {

namespace {

constexpr Color A{0};
constexpr Color B{1};

Event L(RobotId r) { return Look{r}; }
Event C(RobotId r) { return FinishCompute{r}; }
Event E(RobotId r) { return FinishMove{r}; }

ScheduleScript periodic(std::vector<Event> period, bool relabel_ids = false, std::vector<Event> prefix = {})
{
    ScheduleScript s;
    s.prefix = std::move(prefix);
    s.period = std::move(period);
    s.relabel_period = relabel_ids;
    return s;
}

[[noreturn]] void mismatch(const std::string& what) { throw Error(ErrorKind::precondition_mismatch, what); }

void require_two_colors(const RuleTable& t, const std::string& who)
{
    if (t.palette().size() != 2) mismatch(who + " needs a two-color table");
}

void require_rule(const RuleTable& t, Color me, Color other, Color next, const Scalar& lambda, const std::string& who)
{
    const Rule& r = t.lookup(me, other);
    if (r.next != next || r.lambda != lambda) {
        const auto& p = t.palette();
        mismatch(who + " requires " + p.name(me) + "(" + p.name(other) + ")=(" + p.name(next) + "," + lambda.str() + "), table has (" +
                 p.name(r.next) + "," + r.lambda.str() + ")");
    }
}

const Scalar kHalf(1, 2);

// ---------------------------------------------------------------------------
// Round-based color-state search

struct ColorState {
    Color c0, c1;
    int parity;
    friend bool operator==(const ColorState&, const ColorState&) = default;
};

ColorState swapped(const ColorState& s) { return {s.c1, s.c0, 1 - s.parity}; }

template <typename Choose>
ScheduleScript search_round_period(const RuleTable& table, ColorPair start, Choose&& choose)
{
    std::vector<ColorState> states{{start.first, start.second, 0}};
    std::vector<Event> rounds;
    const std::size_t limit = 2 * table.palette().size() * table.palette().size() + 2;
    for (std::size_t step = 0; step <= limit; ++step) {
        const ColorState s = states.back();
        const auto [active, flip] = choose(s);
        ColorState n = s;
        for (RobotId r : active) {
            const Color me = r == 0 ? s.c0 : s.c1;
            const Color other = r == 0 ? s.c1 : s.c0;
            (r == 0 ? n.c0 : n.c1) = table.lookup(me, other).next;
        }
        if (flip) n.parity = 1 - n.parity;
        rounds.emplace_back(Round{active, {}});

        for (std::size_t j = 0; j < states.size(); ++j) {
            if (states[j] == n)
                return periodic({rounds.begin() + static_cast<long>(j), rounds.end()}, false, {rounds.begin(), rounds.begin() + static_cast<long>(j)});
        }
        for (std::size_t j = 0; j < states.size(); ++j) {
            if (states[j] == swapped(n))
                return periodic({rounds.begin() + static_cast<long>(j), rounds.end()}, true, {rounds.begin(), rounds.begin() + static_cast<long>(j)});
        }
        states.push_back(n);
    }
    throw Error(ErrorKind::precondition_mismatch, "no periodic color pattern found");
}

}  // namespace

AdversaryPlan symmetric_fsynch(const RuleTable& table, ColorPair start_colors)
{
    if (table.palette().size() != 1 && start_colors.first != start_colors.second)
        mismatch("symmetric_fsynch needs one color or a symmetric start");
    auto choose = [&](const ColorState& s) -> std::pair<std::vector<RobotId>, bool> {
        if (s.c0 == s.c1 && table.lookup(s.c0, s.c1).lambda == kHalf) return {{s.parity}, true};
        return {{0, 1}, false};
    };
    AdversaryPlan plan{"symmetric-fsynch", "mirror-symmetric rounds; midpoint rounds activate one robot, alternating",
                       search_round_period(table, start_colors, choose), start_colors, SchedulerKind::ssynch, std::nullopt};
    if (table.palette().size() == 1) {
        const Scalar& lambda = table.lookup(Color{0}, Color{0}).lambda;
        plan.expected_factor = lambda == kHalf ? kHalf : (Scalar(1) - Scalar(2) * lambda).abs();
    }
    return plan;
}

AdversaryPlan alternating_ssynch(const RuleTable& table, ColorPair start_colors, bool with_exception)
{
    auto choose = [&](const ColorState& s) -> std::pair<std::vector<RobotId>, bool> {
        const RobotId r = s.parity;
        const Color me = r == 0 ? s.c0 : s.c1;
        const Color other = r == 0 ? s.c1 : s.c0;
        if (with_exception && table.lookup(me, other).lambda == Scalar(1)) return {{0, 1}, true};
        return {{r}, true};
    };
    return AdversaryPlan{with_exception ? "alternating-ssynch-exception" : "alternating-ssynch",
                         with_exception ? "one robot per round, alternating; both when the scheduled robot would jump onto the other"
                                        : "one robot per round, alternating",
                         search_round_period(table, start_colors, choose),
                         start_colors,
                         SchedulerKind::ssynch,
                         std::nullopt};
}

// ---------------------------------------------------------------------------
// Parametric ASYNCH schedules

ScheduleScript lemma13_script(const Scalar& lambda)
{
    if (lambda == kHalf) return periodic({L(0), C(0), E(0)}, true);
    return periodic({L(0), L(1), C(0), C(1), E(0), E(1)});
}

AdversaryPlan lemma13_plan(const RuleTable& table)
{
    require_two_colors(table, "lemma13");
    const Rule& aa = table.lookup(A, A);
    if (aa.next != A) mismatch("lemma13 requires A(A)=(A,*)");
    const Scalar factor = aa.lambda == kHalf ? kHalf : (Scalar(1) - Scalar(2) * aa.lambda).abs();
    return {"lemma13", "both robots stay A; symmetric joint cycles, single alternating cycles for midpoints", lemma13_script(aa.lambda), {A, A},
            SchedulerKind::asynch, factor};
}

ScheduleScript prop12_script()
{
    return periodic({L(0), L(1), C(0), C(1), E(0), E(1), L(0), L(1), C(0), C(1), E(0), E(1)});
}

AdversaryPlan prop12_plan(const RuleTable& table)
{
    require_two_colors(table, "prop12");
    const Rule& aa = table.lookup(A, A);
    const Rule& bb = table.lookup(B, B);
    if (aa.next != B || bb.next != A) mismatch("prop12 requires A(A)=(B,*) and B(B)=(A,*)");
    if (aa.lambda == kHalf || bb.lambda == kHalf) mismatch("prop12 requires that neither same-color rule is a midpoint move");
    const Scalar factor = (Scalar(1) - Scalar(2) * aa.lambda).abs() * (Scalar(1) - Scalar(2) * bb.lambda).abs();
    return {"prop12", "mirror-symmetric joint cycles through A,A and B,B", prop12_script(), {A, A}, SchedulerKind::asynch, factor};
}

ScheduleScript lemma16_script(const Scalar& lambda, Lemma16Variant variant)
{
    if (variant == Lemma16Variant::lambda_eq_1) {
        if (lambda != Scalar(1)) mismatch("lemma16 variant lambda_eq_1 needs lambda = 1");
        // r: full cycle, then look+compute; s: two full cycles; r finishes.
        return periodic({L(0), C(0), E(0), L(0), C(0), L(1), C(1), E(1), L(1), C(1), E(1), E(0)});
    }
    if (lambda == Scalar(1)) mismatch("lemma16 general variant needs lambda != 1");
    return periodic({L(0), C(0), E(0), L(0), C(0), E(0)}, true);
}

AdversaryPlan lemma16_plan(const RuleTable& table)
{
    require_two_colors(table, "lemma16");
    require_rule(table, A, A, B, kHalf, "lemma16");
    const Rule& ba = table.lookup(B, A);
    if (ba.next != A) mismatch("lemma16 requires B(A)=(A,*)");
    if (ba.lambda == Scalar(1))
        return {"lemma16", "one robot runs ahead two cycles; the other catches up onto it", lemma16_script(ba.lambda, Lemma16Variant::lambda_eq_1),
                {A, A}, SchedulerKind::asynch, kHalf};
    return {"lemma16", "two cycles per robot, alternating", lemma16_script(ba.lambda, Lemma16Variant::general), {A, A}, SchedulerKind::asynch,
            (Scalar(1) - ba.lambda).abs() / Scalar(2)};
}

ScheduleScript lemma17_script(const Scalar& lambda)
{
    if (lambda.is_zero()) mismatch("lemma17 needs lambda != 0");
    return periodic({L(0), L(1), C(0), E(0), L(0), C(0), E(0), C(1), E(1), L(0), L(1), C(0), C(1), E(0), E(1)});
}

AdversaryPlan lemma17_plan(const RuleTable& table)
{
    require_two_colors(table, "lemma17");
    require_rule(table, A, A, B, kHalf, "lemma17");
    require_rule(table, B, B, A, Scalar(0), "lemma17");
    const Rule& ba = table.lookup(B, A);
    if (ba.next != B || ba.lambda.is_zero()) mismatch("lemma17 requires B(A)=(B,lambda) with lambda != 0");
    return {"lemma17", "simultaneous look; one robot runs a second cycle away from the midpoint", lemma17_script(ba.lambda), {A, A},
            SchedulerKind::asynch, ba.lambda.abs() / Scalar(2)};
}

ScheduleScript lemma18_script(const Scalar& lambda, Lemma18Case which)
{
    switch (which) {
    case Lemma18Case::to_b_not1:
        if (lambda == Scalar(1)) mismatch("lemma18 case to_b_not1 needs lambda != 1");
        return periodic({L(0), C(0), E(0), L(1), C(1), E(1), L(0), L(1), C(0), C(1), E(0), E(1)});
    case Lemma18Case::to_b_1:
        if (lambda != Scalar(1)) mismatch("lemma18 case to_b_1 needs lambda = 1");
        return periodic({L(0), C(0), L(1), C(1), E(1), E(0), L(0), L(1), C(0), C(1), E(0), E(1)});
    case Lemma18Case::stays_a:
        if (lambda == Scalar(1)) mismatch("lemma18 case stays_a needs lambda != 1");
        return periodic({L(1), C(1), E(1), L(0), C(0), E(0)}, false, {L(0), C(0), E(0)});
    }
    mismatch("unknown lemma18 case");
}

AdversaryPlan lemma18_plan(const RuleTable& table)
{
    require_two_colors(table, "lemma18");
    require_rule(table, A, A, B, kHalf, "lemma18");
    require_rule(table, B, B, A, Scalar(0), "lemma18");
    const Rule& ab = table.lookup(A, B);
    if (ab.next == B) {
        if (ab.lambda == Scalar(1))
            return {"lemma18", "look-compute, other robot lands on it, then it leaves", lemma18_script(ab.lambda, Lemma18Case::to_b_1), {A, A},
                    SchedulerKind::asynch, kHalf};
        return {"lemma18", "sequential cycles to B,B, then a joint cycle back to A,A", lemma18_script(ab.lambda, Lemma18Case::to_b_not1), {A, A},
                SchedulerKind::asynch, (Scalar(1) - ab.lambda).abs() / Scalar(2)};
    }
    if (ab.lambda == Scalar(1)) mismatch("lemma18 does not apply when A(B)=(A,1)");
    require_rule(table, B, A, B, Scalar(0), "lemma18");
    return {"lemma18", "B-robot pinned, A-robot chases with factor |1-lambda| per cycle", lemma18_script(ab.lambda, Lemma18Case::stays_a), {A, A},
            SchedulerKind::asynch, (Scalar(1) - ab.lambda).abs()};
}

ScheduleScript lemma19_script(const Scalar& lambda)
{
    if (lambda.is_zero()) mismatch("lemma19 needs lambda != 0");
    return periodic({L(0), L(1), C(0), C(1), E(0), L(0), E(1), L(1), C(1), E(1), C(0), E(0)});
}

AdversaryPlan lemma19_plan(const RuleTable& table)
{
    require_two_colors(table, "lemma19");
    require_rule(table, A, A, B, kHalf, "lemma19");
    const Rule& bb = table.lookup(B, B);
    if (bb.next != A || bb.lambda.is_zero()) mismatch("lemma19 requires B(B)=(A,lambda) with lambda != 0");
    return {"lemma19", "simultaneous look; staggered completion through the midpoint", lemma19_script(bb.lambda), {A, A}, SchedulerKind::asynch,
            bb.lambda.abs() / Scalar(2)};
}

ScheduleScript lemma23_script()
{
    return periodic({L(0), L(1), C(0), E(0), L(0), C(1), E(1), L(1), C(0), E(0), L(0), C(0), E(0), C(1), E(1)});
}

AdversaryPlan lemma23_plan(const RuleTable& table)
{
    require_two_colors(table, "lemma23");
    require_rule(table, A, A, B, kHalf, "lemma23");
    require_rule(table, A, B, A, Scalar(1), "lemma23");
    require_rule(table, B, A, B, Scalar(0), "lemma23");
    require_rule(table, B, B, A, Scalar(0), "lemma23");
    return {"lemma23", "seven-stage interleaving from B,B that halves the distance", lemma23_script(), {B, B}, SchedulerKind::asynch, kHalf};
}

std::string_view to_string(Lemma16Variant v) { return v == Lemma16Variant::general ? "general" : "lambda_eq_1"; }

std::string_view to_string(Lemma18Case c)
{
    switch (c) {
    case Lemma18Case::to_b_not1: return "to_B_not1";
    case Lemma18Case::to_b_1: return "to_B_1";
    case Lemma18Case::stays_a: return "stays_A";
    }
    return "?";
}

Lemma16Variant parse_lemma16_variant(std::string_view text)
{
    if (text == "general" || text.empty()) return Lemma16Variant::general;
    if (text == "lambda_eq_1") return Lemma16Variant::lambda_eq_1;
    throw Error(ErrorKind::parse, "unknown lemma16 variant '" + std::string(text) + "'");
}

Lemma18Case parse_lemma18_case(std::string_view text)
{
    if (text == "to_B_not1" || text == "to_b_not1") return Lemma18Case::to_b_not1;
    if (text == "to_B_1" || text == "to_b_1") return Lemma18Case::to_b_1;
    if (text == "stays_A" || text == "stays_a") return Lemma18Case::stays_a;
    throw Error(ErrorKind::parse, "unknown lemma18 case '" + std::string(text) + "'");
}

ScheduleScript named_script(std::string_view id, const Scalar& lambda, std::string_view which)
{
    if (id == "lemma13") return lemma13_script(lambda);
    if (id == "prop12") return prop12_script();
    if (id == "lemma16") return lemma16_script(lambda, parse_lemma16_variant(which));
    if (id == "lemma17") return lemma17_script(lambda);
    if (id == "lemma18") return lemma18_script(lambda, parse_lemma18_case(which));
    if (id == "lemma19") return lemma19_script(lambda);
    if (id == "lemma23") return lemma23_script();
    throw Error(ErrorKind::parse, "unknown adversary '" + std::string(id) + "'");
}

AdversaryPlan named_plan(std::string_view id, const RuleTable& table, ColorPair start_colors)
{
    if (id == "symmetric-fsynch") return symmetric_fsynch(table, start_colors);
    if (id == "alternating-ssynch") return alternating_ssynch(table, start_colors, false);
    if (id == "alternating-ssynch-exception") return alternating_ssynch(table, start_colors, true);
    if (id == "lemma13") return lemma13_plan(table);
    if (id == "prop12") return prop12_plan(table);
    if (id == "lemma16") return lemma16_plan(table);
    if (id == "lemma17") return lemma17_plan(table);
    if (id == "lemma18") return lemma18_plan(table);
    if (id == "lemma19") return lemma19_plan(table);
    if (id == "lemma23") return lemma23_plan(table);
    if (id == "auto") {
        auto d = dispatch_two_colors(table);
        d.plan.start_colors = d.start_colors;
        if (d.colors_swapped) d.plan.id += "~swapped";
        // The script itself is color-agnostic, so it applies unchanged.
        return d.plan;
    }
    throw Error(ErrorKind::parse, "unknown adversary '" + std::string(id) + "'");
}

Dispatch dispatch_two_colors(const RuleTable& table)
{
    if (table.palette().size() != 2) throw Error(ErrorKind::dispatch_gap, "two-color dispatch needs a two-color table");
    auto finish = [](AdversaryPlan plan, bool swapped_colors) {
        ColorPair start = plan.start_colors;
        if (swapped_colors) start = {Color{static_cast<std::uint8_t>(1 - start.first.index)}, Color{static_cast<std::uint8_t>(1 - start.second.index)}};
        return Dispatch{std::move(plan), swapped_colors, start};
    };

    if (table.lookup(A, A).next == A) return finish(lemma13_plan(table), false);
    if (table.lookup(B, B).next == B) return finish(lemma13_plan(swap_colors(table)), true);

    const bool aa_mid = table.lookup(A, A).lambda == kHalf;
    const bool bb_mid = table.lookup(B, B).lambda == kHalf;
    if (!aa_mid && !bb_mid) return finish(prop12_plan(table), false);

    const bool swap = !aa_mid;
    const RuleTable t = swap ? swap_colors(table) : table;
    const Rule& bb = t.lookup(B, B);
    const Rule& ba = t.lookup(B, A);
    const Rule& ab = t.lookup(A, B);
    if (!bb.lambda.is_zero()) return finish(lemma19_plan(t), swap);
    if (ba.next == A) return finish(lemma16_plan(t), swap);
    if (!ba.lambda.is_zero()) return finish(lemma17_plan(t), swap);
    if (!(ab.next == A && ab.lambda == Scalar(1))) return finish(lemma18_plan(t), swap);
    if (t == alg1()) return finish(lemma23_plan(t), swap);
    throw Error(ErrorKind::dispatch_gap, "no adversary matches " + table.describe());
}

// ---------------------------------------------------------------------------
// Engineered starts

DrivePlan drive_to_config(const RuleTable& table, ColorPair target, const Scalar& target_distance, const Rigidity& rigidity)
{
    if (table.palette().size() != 2) throw Error(ErrorKind::unreachable_target, "drive_to_config needs a two-color table");
    if (target_distance.sign() < 0) throw Error(ErrorKind::unreachable_target, "negative target distance");
    if (target == ColorPair{A, A}) return {target_distance, {}, "identity"};

    const Rule& aa = table.lookup(A, A);
    if (aa.next != B) throw Error(ErrorKind::unreachable_target, "A(A) does not turn B, so no other colors are reachable from A,A");
    const Scalar& lambda = aa.lambda;
    const bool joint = target == ColorPair{B, B};
    const bool nonrigid = !rigidity.is_rigid();

    DrivePlan plan{Scalar(0), {}, {}};
    auto& ev = plan.script.prefix;

    if (joint) {
        if (nonrigid && lambda.sign() > 0 && lambda * (target_distance + Scalar(2) * rigidity.delta()) >= rigidity.delta()) {
            const Scalar& delta = rigidity.delta();
            plan.initial_distance = target_distance + Scalar(2) * delta;
            plan.construction = "truncate";
            ev = {L(0), L(1), C(0), C(1), MoveStep{0, delta}, MoveStep{1, plan.initial_distance - delta}, E(0), E(1)};
            return plan;
        }
        const Scalar f = (Scalar(1) - Scalar(2) * lambda).abs();
        if (f.is_zero()) throw Error(ErrorKind::unreachable_target, "midpoint rule collapses a joint cycle and truncation is unavailable");
        plan.initial_distance = target_distance / f;
        plan.construction = "scale";
        ev = {L(0), L(1), C(0), C(1)};
        if (nonrigid) ev.insert(ev.end(), {MoveStep{0, std::nullopt}, MoveStep{1, std::nullopt}});
        ev.insert(ev.end(), {E(0), E(1)});
        return plan;
    }

    // Exactly one robot turns B: robot 0 for (B,A), robot 1 for (A,B).
    if (!(target == ColorPair{B, A} || target == ColorPair{A, B})) throw Error(ErrorKind::unreachable_target, "target colors outside {A,B}");
    const RobotId mover = target.first == B ? 0 : 1;
    if (nonrigid && lambda.sign() > 0 && lambda * (target_distance + rigidity.delta()) >= rigidity.delta()) {
        const Scalar& delta = rigidity.delta();
        plan.initial_distance = target_distance + delta;
        plan.construction = "truncate";
        const Scalar stop = mover == 0 ? delta : plan.initial_distance - delta;
        ev = {L(mover), C(mover), MoveStep{mover, stop}, E(mover)};
        return plan;
    }
    const Scalar f = (Scalar(1) - lambda).abs();
    if (f.is_zero()) throw Error(ErrorKind::unreachable_target, "chase rule collapses a single cycle and truncation is unavailable");
    plan.initial_distance = target_distance / f;
    plan.construction = "scale";
    ev = {L(mover), C(mover)};
    if (nonrigid) ev.emplace_back(MoveStep{mover, std::nullopt});
    ev.push_back(E(mover));
    return plan;
}

// ---------------------------------------------------------------------------
// Randomized fair scheduling

TruncationPolicy parse_truncation_policy(std::string_view text)
{
    if (text == "always_full" || text == "full") return TruncationPolicy::always_full;
    if (text == "always_delta" || text == "delta") return TruncationPolicy::always_delta;
    if (text == "uniform") return TruncationPolicy::uniform;
    throw Error(ErrorKind::parse, "unknown truncation policy '" + std::string(text) + "'");
}

namespace {

constexpr std::uint64_t kGranularity = 8;

std::size_t max_steps(const Rigidity& rigidity, std::size_t window)
{
    if (rigidity.is_rigid()) return window >= 8 ? 1 : 0;
    return window >= 10 ? 2 : 1;
}

}  // namespace

RandomFairScheduler::RandomFairScheduler(std::uint64_t seed, FairnessPolicy policy, TruncationPolicy truncation, Algorithm algorithm)
    : rng_(seed), policy_(policy), truncation_(truncation), algorithm_(std::move(algorithm))
{
    if (policy_.window < 2) throw Error(ErrorKind::unsupported_model, "fairness window must be at least 2");
}

std::size_t RandomFairScheduler::max_cycle_events(const Rigidity& rigidity) const { return 3 + max_steps(rigidity, policy_.window); }

std::uint64_t RandomFairScheduler::draw(std::uint64_t bound) { return rng_() % bound; }

std::optional<Event> RandomFairScheduler::next(const Configuration& current)
{
    if (both_terminated(current)) return std::nullopt;
    if (current.model == SchedulerKind::asynch) return next_asynch(current);
    return next_round(current);
}

Scalar RandomFairScheduler::final_point(const Rigidity& rigidity, const Scalar& start, const Scalar& destination)
{
    if (rigidity.is_rigid()) return destination;
    const Scalar span = (destination - start).abs();
    if (span.is_zero()) return destination;
    const Scalar sign(destination > start ? 1 : -1);
    const Scalar lo = start + sign * min(rigidity.delta(), span);
    switch (truncation_) {
    case TruncationPolicy::always_full: return destination;
    case TruncationPolicy::always_delta: return lo;
    case TruncationPolicy::uniform: {
        const Scalar k(static_cast<long>(draw(kGranularity + 1)));
        return lo + (destination - lo) * k / Scalar(static_cast<long>(kGranularity));
    }
    }
    return destination;
}

RandomFairScheduler::Plan RandomFairScheduler::plan_move(const Configuration& current, RobotId r)
{
    const RobotState& robot = current.robot(r);
    const Moving& mv = *robot.moving();
    Plan plan;
    const Scalar target = final_point(current.rigidity, robot.position, mv.destination);
    const std::size_t cap = max_steps(current.rigidity, policy_.window);
    if (current.rigidity.is_rigid()) {
        if (cap > 0 && draw(2) == 1) plan.points.push_back(target);
        return plan;
    }
    if (cap >= 2 && draw(2) == 1) {
        const Scalar j(static_cast<long>(draw(kGranularity + 1)));
        plan.points.push_back(robot.position + (target - robot.position) * j / Scalar(static_cast<long>(kGranularity)));
    }
    plan.points.push_back(target);
    return plan;
}

std::size_t RandomFairScheduler::remaining_work(const Configuration& c, RobotId r) const
{
    const RobotState& robot = c.robot(r);
    const std::size_t steps = max_steps(c.rigidity, policy_.window);
    switch (robot.phase.index()) {
    case 0: return 3 + steps;
    case 1: return 2 + steps;
    case 2: {
        const auto& plan = plans_[static_cast<std::size_t>(r)];
        return plan ? plan->points.size() - plan->next + 1 : steps + 1;
    }
    default: return 0;
    }
}

std::optional<Event> RandomFairScheduler::next_asynch(const Configuration& current)
{
    if (policy_.window < 2 * max_cycle_events(current.rigidity))
        throw Error(ErrorKind::unsupported_model, "ASYNCH fairness window must be at least " + std::to_string(2 * max_cycle_events(current.rigidity)));

    const auto t = static_cast<long long>(emitted_);
    const auto window = static_cast<long long>(policy_.window);
    const auto full = static_cast<long long>(max_cycle_events(current.rigidity));

    for (RobotId r : {0, 1}) {
        auto& plan = plans_[static_cast<std::size_t>(r)];
        if (current.robot(r).moving() && !plan) plan = plan_move(current, r);
    }

    // Earliest-deadline feasibility after robot `chosen` takes one step.
    auto feasible = [&](RobotId chosen) {
        std::vector<std::pair<long long, long long>> jobs;  // deadline, work
        for (RobotId r : {0, 1}) {
            if (current.robot(r).terminated()) continue;
            long long work = static_cast<long long>(remaining_work(current, r));
            long long last = last_completion_[static_cast<std::size_t>(r)];
            if (r == chosen && --work == 0) {
                last = t;
                work = full;
            }
            jobs.emplace_back(last + window, work);
        }
        std::sort(jobs.begin(), jobs.end());
        long long time = t + 1;
        for (const auto& [deadline, work] : jobs) {
            time += work;
            if (time - 1 > deadline) return false;
        }
        return true;
    };

    std::vector<RobotId> options;
    for (RobotId r : {0, 1})
        if (!current.robot(r).terminated() && feasible(r)) options.push_back(r);
    RobotId chosen;
    if (options.empty()) {
        // Not reachable with a valid window; fall back to earliest deadline.
        chosen = last_completion_[0] <= last_completion_[1] && !current.robot(0).terminated() ? 0 : 1;
    } else {
        chosen = options[draw(options.size())];
    }

    const RobotState& robot = current.robot(chosen);
    auto& plan = plans_[static_cast<std::size_t>(chosen)];
    ++emitted_;
    switch (robot.phase.index()) {
    case 0: return Look{chosen};
    case 1: return FinishCompute{chosen};
    default: break;
    }
    if (plan->next < plan->points.size()) return MoveStep{chosen, plan->points[plan->next++]};
    plan.reset();
    last_completion_[static_cast<std::size_t>(chosen)] = t;
    return FinishMove{chosen};
}

Event RandomFairScheduler::next_round(const Configuration& current)
{
    Round round;
    std::vector<RobotId> live;
    for (RobotId r : {0, 1})
        if (!current.robot(r).terminated()) live.push_back(r);

    if (current.model == SchedulerKind::fsynch) {
        round.active = live;
    } else {
        for (RobotId r : live) {
            const bool forced = skipped_[static_cast<std::size_t>(r)] + 2 >= policy_.window;
            if (forced || draw(2) == 1) round.active.push_back(r);
        }
        if (round.active.empty()) round.active.push_back(live[draw(live.size())]);
    }
    for (RobotId r : live) {
        const bool on = std::find(round.active.begin(), round.active.end(), r) != round.active.end();
        skipped_[static_cast<std::size_t>(r)] = on ? 0 : skipped_[static_cast<std::size_t>(r)] + 1;
    }

    for (RobotId r : round.active) {
        const RobotState& me = current.robot(r);
        const RobotState& other = current.robot(1 - r);
        const Action action = algorithm_.decide(me.light, other.light, me.position == other.position);
        if (const auto* rule = std::get_if<Rule>(&action)) {
            const Scalar destination = convex_point(me.position, other.position, rule->lambda);
            Scalar stop = final_point(current.rigidity, me.position, destination);
            if (stop != destination) round.truncation.emplace(r, std::move(stop));
        }
    }
    ++emitted_;
    return round;
}

Trace run_random_fair(const Algorithm& algorithm, const Configuration& config, std::uint64_t seed, FairnessPolicy policy, TruncationPolicy truncation,
                      const RunOptions& options)
{
    RandomFairScheduler scheduler(seed, policy, truncation, algorithm);
    Trace trace = run_schedule(config, algorithm, scheduler, options);
    trace.metadata.schedule = "random:" + std::to_string(seed);
    trace.metadata.seed = seed;
    return trace;
}

bool satisfies_fairness(const Trace& trace, const FairnessPolicy& policy)
{
    const std::size_t n = trace.steps.size();
    const std::size_t w = policy.window;
    if (n < w) return true;

    for (RobotId r : {0, 1}) {
        // Marks events at which robot r made progress that counts for fairness.
        std::vector<char> credit(n, 0);
        std::size_t terminated_at = n;
        for (std::size_t i = 0; i < n; ++i) {
            const RobotState& before = trace.config_before(i).robot(r);
            const RobotState& after = trace.steps[i].config.robot(r);
            if (before.terminated()) {
                terminated_at = std::min(terminated_at, i);
                credit[i] = 1;
                continue;
            }
            if (after.terminated() || after.cycles_completed > before.cycles_completed) credit[i] = 1;
            if (const auto* round = std::get_if<Round>(&trace.steps[i].event)) {
                if (std::find(round->active.begin(), round->active.end(), r) != round->active.end()) credit[i] = 1;
            }
        }
        (void)terminated_at;
        std::size_t in_window = 0;
        for (std::size_t i = 0; i < n; ++i) {
            in_window += static_cast<std::size_t>(credit[i]);
            if (i >= w) in_window -= static_cast<std::size_t>(credit[i - w]);
            if (i + 1 >= w && in_window == 0) return false;
        }
    }
    return true;
}

}  // namespace rendezvous
