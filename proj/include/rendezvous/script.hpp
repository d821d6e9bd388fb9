/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#pragma once

#include "rendezvous/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rendezvous {

/// A finite prefix optionally followed by a period that repeats forever.
/// With `relabel_period`, every odd repetition of the period runs with robot
/// ids 0 and 1 exchanged.
struct ScheduleScript {
    std::vector<Event> prefix;
    std::vector<Event> period;
    bool relabel_period = false;

    [[nodiscard]] bool periodic() const { return !period.empty(); }

    /// Prefix followed by `repetitions` copies of the period (relabelled as
    /// the repetition index demands).
    [[nodiscard]] std::vector<Event> unrolled(std::size_t repetitions) const;

    /// The period as played on repetition `index`.
    [[nodiscard]] std::vector<Event> period_instance(std::size_t index) const;

    friend bool operator==(const ScheduleScript&, const ScheduleScript&) = default;
};

/// Text format: one event per line ("look 0", "compute 0", "movestep 0 3/2",
/// "movestep 0 dest", "endmove 0", "round 0,1 trunc 0=1 1=7"), nestable
/// "repeat N { ... }" blocks that are expanded on load, and at most one
/// trailing "period { ... }" (or "period relabel { ... }") block.
[[nodiscard]] ScheduleScript parse_script(std::string_view text);
[[nodiscard]] std::string format_script(const ScheduleScript& script);

/// Inserts "movestep r dest" before every "endmove r" that is not already
/// preceded by a step of r in the same cycle, so that a rigid script can be
/// replayed under a non-rigid model with every move completed.
[[nodiscard]] ScheduleScript with_full_moves(const ScheduleScript& script);

}  // namespace rendezvous
