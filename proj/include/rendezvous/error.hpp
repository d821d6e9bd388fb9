/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rendezvous {

enum class ErrorKind {
    palette,
    parse,
    illegal_event,
    invalid_move,
    delta_violation,
    terminated_robot,
    invalid_round,
    precondition_mismatch,
    unreachable_target,
    dispatch_gap,
    unsupported_model,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {}

    [[nodiscard]] ErrorKind kind() const { return kind_; }

    /// Index of the offending event when raised while running a schedule.
    [[nodiscard]] std::optional<std::size_t> event_index() const { return event_index_; }

    [[nodiscard]] Error at_event(std::size_t index) const
    {
        Error e(kind_, std::string(what()).substr(to_string(kind_).size() + 2) + " (event " + std::to_string(index) + ")");
        e.event_index_ = index;
        return e;
    }

private:
    ErrorKind kind_;
    std::optional<std::size_t> event_index_;
};

}  // namespace rendezvous
