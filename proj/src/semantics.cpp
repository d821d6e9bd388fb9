/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#include "rendezvous/semantics.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

namespace rendezvous {

namespace {

std::string robot_str(RobotId r) { return "robot " + std::to_string(r); }

RobotId event_robot(const Event& e)
{
    return std::visit(
        [](const auto& ev) -> RobotId {
            if constexpr (requires { ev.robot; }) return ev.robot;
            else return -1;
        },
        e);
}

void check_robot_id(RobotId r)
{
    if (r != 0 && r != 1) throw Error(ErrorKind::illegal_event, "no robot with id " + std::to_string(r));
}

// Validates a completed move from `start` towards `destination` that ended
// at `reached`, given the rigidity contract.
void check_move_contract(const Rigidity& rigidity, RobotId r, const Scalar& start, const Scalar& destination, const Scalar& reached)
{
    if (!on_segment(reached, start, destination))
        throw Error(ErrorKind::invalid_move, robot_str(r) + " stopped at " + reached.str() + " outside [" + start.str() + ", " + destination.str() + "]");
    if (rigidity.is_rigid()) {
        if (reached != destination)
            throw Error(ErrorKind::delta_violation, robot_str(r) + " must reach " + destination.str() + " in the rigid model");
        return;
    }
    const Scalar required = min(rigidity.delta(), (destination - start).abs());
    if ((reached - start).abs() < required)
        throw Error(ErrorKind::delta_violation, robot_str(r) + " moved " + (reached - start).abs().str() + " < min(delta, remaining) = " + required.str());
}

}  // namespace

Configuration apply_asynch(const Configuration& config, const Algorithm& algorithm, const Event& event)
{
    if (config.model != SchedulerKind::asynch) throw Error(ErrorKind::illegal_event, "fine-grained events require the ASYNCH model");
    if (std::holds_alternative<Round>(event)) throw Error(ErrorKind::illegal_event, "round events are not valid under ASYNCH");

    const RobotId id = event_robot(event);
    check_robot_id(id);
    Configuration next = config;
    RobotState& me = next.robot(id);
    const RobotState& other = next.robot(1 - id);
    if (me.terminated()) throw Error(ErrorKind::terminated_robot, robot_str(id) + " has terminated");

    if (std::holds_alternative<Look>(event)) {
        if (!me.waiting()) throw Error(ErrorKind::illegal_event, robot_str(id) + " cannot look while in " + std::string(phase_name(me.phase)));
        me.phase = Computing{Snapshot{me.light, other.light, me.position, other.position}};
    } else if (std::holds_alternative<FinishCompute>(event)) {
        const auto* computing = std::get_if<Computing>(&me.phase);
        if (computing == nullptr) throw Error(ErrorKind::illegal_event, robot_str(id) + " is not computing");
        const Snapshot snap = computing->snapshot;
        const Action action = algorithm.decide(snap.my_color, snap.other_color, snap.my_position == snap.other_position);
        if (std::holds_alternative<Terminate>(action)) {
            me.phase = Terminated{};
        } else {
            const auto& rule = std::get<Rule>(action);
            me.light = rule.next;
            me.phase = Moving{convex_point(snap.my_position, snap.other_position, rule.lambda), me.position};
        }
    } else if (const auto* step = std::get_if<MoveStep>(&event)) {
        const Moving* mv = me.moving();
        if (mv == nullptr) throw Error(ErrorKind::illegal_event, robot_str(id) + " is not moving");
        const Scalar target = step->point.value_or(mv->destination);
        if (!on_segment(target, me.position, mv->destination))
            throw Error(ErrorKind::invalid_move,
                        robot_str(id) + " step to " + target.str() + " leaves [" + me.position.str() + ", " + mv->destination.str() + "]");
        me.position = target;
    } else if (std::holds_alternative<FinishMove>(event)) {
        const Moving* mv = me.moving();
        if (mv == nullptr) throw Error(ErrorKind::illegal_event, robot_str(id) + " is not moving");
        // Rigid moves complete on their own.
        if (config.rigidity.is_rigid()) me.position = mv->destination;
        check_move_contract(config.rigidity, id, mv->start, mv->destination, me.position);
        me.phase = Waiting{};
        ++me.cycles_completed;
    }
    return next;
}

Configuration apply_round(const Configuration& config, const Algorithm& algorithm, const Round& round)
{
    if (config.model == SchedulerKind::asynch) throw Error(ErrorKind::illegal_event, "round events require FSYNCH or SSYNCH");
    if (round.active.empty()) throw Error(ErrorKind::invalid_round, "empty active set");

    std::vector<RobotId> active = round.active;
    std::sort(active.begin(), active.end());
    if (std::adjacent_find(active.begin(), active.end()) != active.end()) throw Error(ErrorKind::invalid_round, "duplicate robot in active set");
    for (RobotId r : active) {
        check_robot_id(r);
        if (config.robot(r).terminated()) throw Error(ErrorKind::terminated_robot, robot_str(r) + " has terminated");
        if (!config.robot(r).waiting()) throw Error(ErrorKind::illegal_event, robot_str(r) + " is not waiting");
    }
    for (const auto& [r, p] : round.truncation)
        if (std::find(active.begin(), active.end(), r) == active.end())
            throw Error(ErrorKind::invalid_round, "truncation given for inactive " + robot_str(r));
    if (config.model == SchedulerKind::fsynch) {
        for (const auto& rs : config.robots)
            if (!rs.terminated() && std::find(active.begin(), active.end(), rs.id) == active.end())
                throw Error(ErrorKind::invalid_round, "FSYNCH activates every non-terminated robot");
    }

    Configuration next = config;
    for (RobotId r : active) {
        const RobotState& me = config.robot(r);
        const RobotState& other = config.robot(1 - r);
        RobotState& out = next.robot(r);
        const Action action = algorithm.decide(me.light, other.light, me.position == other.position);
        if (std::holds_alternative<Terminate>(action)) {
            if (round.truncation.contains(r)) throw Error(ErrorKind::invalid_round, "truncation given for terminating " + robot_str(r));
            out.phase = Terminated{};
            continue;
        }
        const auto& rule = std::get<Rule>(action);
        const Scalar destination = convex_point(me.position, other.position, rule.lambda);
        Scalar reached = destination;
        if (auto it = round.truncation.find(r); it != round.truncation.end()) reached = it->second;
        check_move_contract(config.rigidity, r, me.position, destination, reached);
        out.light = rule.next;
        out.position = reached;
        ++out.cycles_completed;
    }
    return next;
}

Configuration apply_event(const Configuration& config, const Algorithm& algorithm, const Event& event)
{
    if (const auto* round = std::get_if<Round>(&event)) return apply_round(config, algorithm, *round);
    return apply_asynch(config, algorithm, event);
}

bool gathered_stable(const Configuration& config, const Algorithm& algorithm)
{
    const Scalar& p = config.robots[0].position;
    if (config.robots[1].position != p) return false;
    for (const auto& r : config.robots) {
        if (const auto* c = std::get_if<Computing>(&r.phase)) {
            const Snapshot& s = c->snapshot;
            const Action a = algorithm.decide(s.my_color, s.other_color, s.my_position == s.other_position);
            if (const auto* rule = std::get_if<Rule>(&a); rule && convex_point(s.my_position, s.other_position, rule->lambda) != p) return false;
        } else if (const auto* mv = r.moving()) {
            if (mv->destination != p) return false;
        }
    }
    return true;
}

bool both_terminated(const Configuration& config)
{
    return config.robots[0].terminated() && config.robots[1].terminated();
}

std::string_view to_string(StopReason reason)
{
    switch (reason) {
    case StopReason::gathered: return "gathered";
    case StopReason::terminated: return "terminated";
    case StopReason::script_exhausted: return "script-exhausted";
    case StopReason::budget: return "budget";
    }
    return "?";
}

std::optional<Event> ScriptSource::next(const Configuration&)
{
    if (position_ < script_.prefix.size()) return script_.prefix[position_++];
    if (!script_.periodic()) return std::nullopt;
    const std::size_t offset = position_ - script_.prefix.size();
    Event e = script_.period[offset];
    if (script_.relabel_period && repetition_ % 2 == 1) e = relabel(e);
    ++position_;
    if (offset + 1 == script_.period.size()) {
        position_ = script_.prefix.size();
        ++repetition_;
    }
    return e;
}

namespace {

bool should_stop(const Configuration& c, const Algorithm& algorithm, StopReason& reason)
{
    if (algorithm.is_class_l()) {
        if (gathered_stable(c, algorithm)) {
            reason = StopReason::gathered;
            return true;
        }
        return false;
    }
    if (both_terminated(c)) {
        reason = StopReason::terminated;
        return true;
    }
    return false;
}

}  // namespace

Trace run_schedule(const Configuration& config, const Algorithm& algorithm, EventSource& source, const RunOptions& options)
{
    Trace trace{config, {}, {algorithm.name(), algorithm_hash(algorithm), {}, std::nullopt}, StopReason::script_exhausted};
    Configuration current = config;
    while (true) {
        if (options.early_stop && should_stop(current, algorithm, trace.stop)) return trace;
        if (trace.steps.size() >= options.budget) {
            trace.stop = StopReason::budget;
            return trace;
        }
        auto event = source.next(current);
        if (!event) {
            trace.stop = StopReason::script_exhausted;
            return trace;
        }
        try {
            current = apply_event(current, algorithm, *event);
        } catch (const Error& e) {
            throw e.at_event(trace.steps.size());
        }
        trace.steps.push_back({std::move(*event), current});
    }
}

Trace run_schedule(const Configuration& config, const Algorithm& algorithm, const ScheduleScript& script, const RunOptions& options)
{
    ScriptSource source(script);
    return run_schedule(config, algorithm, source, options);
}

std::string algorithm_hash(const Algorithm& algorithm)
{
    // FNV-1a over the canonical text form.
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : format_table(algorithm)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace rendezvous
