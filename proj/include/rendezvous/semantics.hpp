/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#pragma once

#include "rendezvous/model.hpp"
#include "rendezvous/script.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rendezvous {

/// Fine-grained ASYNCH transition. Throws Error with kinds illegal_event,
/// invalid_move, delta_violation or terminated_robot.
[[nodiscard]] Configuration apply_asynch(const Configuration& config, const Algorithm& algorithm, const Event& event);

/// One FSYNCH/SSYNCH round: active robots snapshot the pre-round state
/// simultaneously, then move to their truncation point or destination.
[[nodiscard]] Configuration apply_round(const Configuration& config, const Algorithm& algorithm, const Round& round);

/// Dispatches on the event kind; rounds go to apply_round.
[[nodiscard]] Configuration apply_event(const Configuration& config, const Algorithm& algorithm, const Event& event);

/// Both robots at one point and neither can leave it: each is waiting,
/// terminated, or has a pending destination equal to that point. Every
/// later snapshot is coincident, so no later move leaves it either.
[[nodiscard]] bool gathered_stable(const Configuration& config, const Algorithm& algorithm);

[[nodiscard]] bool both_terminated(const Configuration& config);

struct TraceStep {
    Event event;
    Configuration config;
};

enum class StopReason { gathered, terminated, script_exhausted, budget };

[[nodiscard]] std::string_view to_string(StopReason reason);

struct TraceMetadata {
    std::string algorithm;
    std::string algorithm_hash;
    std::string schedule;
    std::optional<std::uint64_t> seed;
};

struct Trace {
    Configuration initial;
    std::vector<TraceStep> steps;
    TraceMetadata metadata;
    StopReason stop = StopReason::script_exhausted;

    [[nodiscard]] const Configuration& final_config() const { return steps.empty() ? initial : steps.back().config; }
    /// Configuration before step i (i == steps.size() gives the final one).
    [[nodiscard]] const Configuration& config_before(std::size_t i) const { return i == 0 ? initial : steps[i - 1].config; }
};

/// Supplies the next scheduler event given the current configuration;
/// std::nullopt ends the run.
class EventSource {
public:
    virtual ~EventSource() = default;
    virtual std::optional<Event> next(const Configuration& current) = 0;
};

/// Plays a ScheduleScript: the prefix, then the period forever.
class ScriptSource final : public EventSource {
public:
    explicit ScriptSource(ScheduleScript script) : script_(std::move(script)) {}
    std::optional<Event> next(const Configuration& current) override;

private:
    ScheduleScript script_;
    std::size_t position_ = 0;
    std::size_t repetition_ = 0;
};

struct RunOptions {
    std::size_t budget = 10'000;
    /// Stop once gathered_stable holds (class L) or both robots terminated
    /// (extended tables).
    bool early_stop = true;
};

/// Errors from apply_* are rethrown with the offending event index attached.
[[nodiscard]] Trace run_schedule(const Configuration& config, const Algorithm& algorithm, EventSource& source, const RunOptions& options = {});
[[nodiscard]] Trace run_schedule(const Configuration& config, const Algorithm& algorithm, const ScheduleScript& script, const RunOptions& options = {});

/// Short stable fingerprint of a table's text form.
[[nodiscard]] std::string algorithm_hash(const Algorithm& algorithm);

}  // namespace rendezvous
