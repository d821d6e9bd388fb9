/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#pragma once

#include "rendezvous/error.hpp"
#include "rendezvous/scalar.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rendezvous {

/// Index of a light color within a palette.
struct Color {
    std::uint8_t index = 0;

    friend auto operator<=>(const Color&, const Color&) = default;
};

/// Names of the available light colors. The standard palette of size k is
/// "A", "B", "C", ... in that order.
class Palette {
public:
    explicit Palette(std::vector<std::string> names);
    static Palette standard(std::size_t size);

    [[nodiscard]] std::size_t size() const { return names_.size(); }
    [[nodiscard]] const std::string& name(Color c) const;
    [[nodiscard]] Color parse(std::string_view name) const;
    [[nodiscard]] bool contains(Color c) const { return c.index < names_.size(); }
    [[nodiscard]] std::vector<Color> colors() const;
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

    friend bool operator==(const Palette&, const Palette&) = default;

private:
    std::vector<std::string> names_;
};

/// X(Y) = (next, lambda): a robot lit X that sees Y turns `next` and moves to
/// (1 - lambda) * me + lambda * other.
struct Rule {
    Color next;
    Scalar lambda;

    friend bool operator==(const Rule&, const Rule&) = default;
};

struct Terminate {
    friend bool operator==(const Terminate&, const Terminate&) = default;
};

using Action = std::variant<Rule, Terminate>;

/// Class-L algorithm: total map (me, other) -> Rule.
class RuleTable {
public:
    RuleTable(Palette palette, std::vector<Rule> entries, std::string name = {});

    [[nodiscard]] const Rule& lookup(Color me, Color other) const;
    [[nodiscard]] const Palette& palette() const { return palette_; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const std::vector<Rule>& entries() const { return entries_; }

    /// Same rules with a different display name.
    [[nodiscard]] RuleTable renamed(std::string name) const;

    /// Rules in the form "A(A)=(B,1/2)", palette order.
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const RuleTable& a, const RuleTable& b)
    {
        return a.palette_ == b.palette_ && a.entries_ == b.entries_;
    }

private:
    Palette palette_;
    std::vector<Rule> entries_;  // index me * k + other
    std::string name_;
};

/// Algorithm that may also branch on whether the two robots coincide and may
/// terminate. Terminate is only allowed on coincident entries.
class ExtendedRuleTable {
public:
    ExtendedRuleTable(Palette palette, std::vector<Action> entries, std::string name = {});

    [[nodiscard]] const Action& lookup(Color me, Color other, bool coincident) const;
    [[nodiscard]] const Palette& palette() const { return palette_; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const std::vector<Action>& entries() const { return entries_; }

private:
    Palette palette_;
    std::vector<Action> entries_;  // index (me * k + other) * 2 + coincident
    std::string name_;
};

/// Either kind of table behind one decision interface.
class Algorithm {
public:
    Algorithm(RuleTable table) : table_(std::move(table)) {}  // NOLINT(google-explicit-constructor)
    Algorithm(ExtendedRuleTable table) : table_(std::move(table)) {}  // NOLINT(google-explicit-constructor)

    [[nodiscard]] Action decide(Color me, Color other, bool coincident) const;
    [[nodiscard]] const Palette& palette() const;
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] bool is_class_l() const { return std::holds_alternative<RuleTable>(table_); }
    [[nodiscard]] const RuleTable& rule_table() const { return std::get<RuleTable>(table_); }

private:
    std::variant<RuleTable, ExtendedRuleTable> table_;
};

/// Table file format: "palette: A B C" then one entry per line, e.g.
/// "A A -> B 1/2", "A A !coincident -> B 1/2", "C C coincident -> TERMINATE".
/// Lines starting with '#' are comments. Extended tables are recognised by
/// the presence of coincidence qualifiers or TERMINATE.
[[nodiscard]] Algorithm parse_table(std::string_view text, std::string name = {});
[[nodiscard]] std::string format_table(const RuleTable& table);
[[nodiscard]] std::string format_table(const ExtendedRuleTable& table);
[[nodiscard]] std::string format_table(const Algorithm& algorithm);

// ---------------------------------------------------------------------------
// Robot and joint state

struct Snapshot {
    Color my_color;
    Color other_color;
    Scalar my_position;
    Scalar other_position;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct Waiting {
    friend bool operator==(const Waiting&, const Waiting&) = default;
};

/// Looked, color not yet applied.
struct Computing {
    Snapshot snapshot;
    friend bool operator==(const Computing&, const Computing&) = default;
};

struct Moving {
    Scalar destination;
    Scalar start;
    friend bool operator==(const Moving&, const Moving&) = default;
};

struct Terminated {
    friend bool operator==(const Terminated&, const Terminated&) = default;
};

using Phase = std::variant<Waiting, Computing, Moving, Terminated>;

[[nodiscard]] std::string_view phase_name(const Phase& phase);

using RobotId = int;

struct RobotState {
    RobotId id = 0;
    Scalar position;
    Color light;
    Phase phase = Waiting{};
    std::uint64_t cycles_completed = 0;

    [[nodiscard]] bool waiting() const { return std::holds_alternative<Waiting>(phase); }
    [[nodiscard]] bool terminated() const { return std::holds_alternative<Terminated>(phase); }
    [[nodiscard]] const Moving* moving() const { return std::get_if<Moving>(&phase); }

    friend bool operator==(const RobotState&, const RobotState&) = default;
};

class Rigidity {
public:
    static Rigidity rigid() { return Rigidity{}; }
    /// delta must be positive.
    static Rigidity non_rigid(Scalar delta);

    [[nodiscard]] bool is_rigid() const { return !delta_.has_value(); }
    [[nodiscard]] const Scalar& delta() const { return *delta_; }
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Rigidity&, const Rigidity&) = default;

private:
    std::optional<Scalar> delta_;
};

enum class SchedulerKind { fsynch, ssynch, asynch };

[[nodiscard]] std::string_view to_string(SchedulerKind kind);
[[nodiscard]] SchedulerKind parse_scheduler_kind(std::string_view text);

struct Configuration {
    std::array<RobotState, 2> robots;
    Rigidity rigidity;
    SchedulerKind model = SchedulerKind::asynch;

    /// Both robots in Wait at positions 0 and `distance`.
    static Configuration initial(SchedulerKind model, Rigidity rigidity, Color c0, Color c1, const Scalar& distance);

    [[nodiscard]] Scalar distance() const { return (robots[0].position - robots[1].position).abs(); }
    [[nodiscard]] const RobotState& robot(RobotId r) const { return robots.at(static_cast<std::size_t>(r)); }
    [[nodiscard]] RobotState& robot(RobotId r) { return robots.at(static_cast<std::size_t>(r)); }

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

// ---------------------------------------------------------------------------
// Scheduler events

struct Look {
    RobotId robot;
    friend bool operator==(const Look&, const Look&) = default;
};

struct FinishCompute {
    RobotId robot;
    friend bool operator==(const FinishCompute&, const FinishCompute&) = default;
};

/// Moves the robot to `point`; no point means straight to its destination.
struct MoveStep {
    RobotId robot;
    std::optional<Scalar> point;
    friend bool operator==(const MoveStep&, const MoveStep&) = default;
};

struct FinishMove {
    RobotId robot;
    friend bool operator==(const FinishMove&, const FinishMove&) = default;
};

struct Round {
    std::vector<RobotId> active;
    std::map<RobotId, Scalar> truncation;
    friend bool operator==(const Round&, const Round&) = default;
};

using Event = std::variant<Look, FinishCompute, MoveStep, FinishMove, Round>;

/// Text form used by schedule scripts, e.g. "look 0", "round 0,1 trunc 0=1".
[[nodiscard]] std::string format_event(const Event& event);
[[nodiscard]] Event parse_event(std::string_view line);

/// The same event with robot ids 0 and 1 exchanged.
[[nodiscard]] Event relabel(const Event& event);

}  // namespace rendezvous
