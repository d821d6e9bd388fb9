/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#pragma once

#include "rendezvous/model.hpp"
#include "rendezvous/script.hpp"
#include "rendezvous/semantics.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace rendezvous {

using ColorPair = std::pair<Color, Color>;

/// A schedule aimed at one table, together with where it has to start and
/// the per-period distance factor its construction predicts.
struct AdversaryPlan {
    std::string id;           // "lemma23", "symmetric-fsynch", ...
    std::string description;  // what the schedule does
    ScheduleScript script;
    ColorPair start_colors;
    SchedulerKind model = SchedulerKind::asynch;
    std::optional<Scalar> expected_factor;
};

// ---------------------------------------------------------------------------
// Round-based adversaries (rigid SSYNCH)

/// Activates both robots every round, except that a round in which the two
/// same-colored robots would both move to the midpoint activates only one of
/// them (alternating). Found periods are cut at the first repeated color
/// state, possibly up to exchanging the robots.
[[nodiscard]] AdversaryPlan symmetric_fsynch(const RuleTable& table, ColorPair start_colors);

/// One robot per round, alternating. With the exception enabled, a round in
/// which the scheduled robot would jump onto the other activates both.
[[nodiscard]] AdversaryPlan alternating_ssynch(const RuleTable& table, ColorPair start_colors, bool with_exception);

// ---------------------------------------------------------------------------
// Parametric ASYNCH schedules for two-color tables started at A,A (B,B for
// lemma23). The *_script functions only need lambda; the *_plan functions
// check a table against the rule pattern and throw precondition_mismatch.

enum class Lemma16Variant { general, lambda_eq_1 };
enum class Lemma18Case { to_b_not1, to_b_1, stays_a };

/// Both robots stay A (A(A) = (A, lambda)): joint cycles, or single
/// alternating cycles when lambda = 1/2.
[[nodiscard]] ScheduleScript lemma13_script(const Scalar& lambda);
[[nodiscard]] AdversaryPlan lemma13_plan(const RuleTable& table);

/// Joint cycles A,A -> B,B -> A,A when neither same-color rule is a midpoint.
[[nodiscard]] ScheduleScript prop12_script();
[[nodiscard]] AdversaryPlan prop12_plan(const RuleTable& table);

[[nodiscard]] ScheduleScript lemma16_script(const Scalar& lambda, Lemma16Variant variant);
[[nodiscard]] AdversaryPlan lemma16_plan(const RuleTable& table);

[[nodiscard]] ScheduleScript lemma17_script(const Scalar& lambda);
[[nodiscard]] AdversaryPlan lemma17_plan(const RuleTable& table);

[[nodiscard]] ScheduleScript lemma18_script(const Scalar& lambda, Lemma18Case which);
[[nodiscard]] AdversaryPlan lemma18_plan(const RuleTable& table);

[[nodiscard]] ScheduleScript lemma19_script(const Scalar& lambda);
[[nodiscard]] AdversaryPlan lemma19_plan(const RuleTable& table);

[[nodiscard]] ScheduleScript lemma23_script();
[[nodiscard]] AdversaryPlan lemma23_plan(const RuleTable& table);

[[nodiscard]] std::string_view to_string(Lemma16Variant v);
[[nodiscard]] std::string_view to_string(Lemma18Case c);
[[nodiscard]] Lemma16Variant parse_lemma16_variant(std::string_view text);
[[nodiscard]] Lemma18Case parse_lemma18_case(std::string_view text);

/// Schedule builder by id for the CLI; `which` selects the lemma16 variant
/// or lemma18 case.
[[nodiscard]] ScheduleScript named_script(std::string_view id, const Scalar& lambda, std::string_view which);

/// Matches a table to the builder for `id` and returns its plan.
[[nodiscard]] AdversaryPlan named_plan(std::string_view id, const RuleTable& table, ColorPair start_colors);

/// Two-color case analysis for arbitrary starts: which adversary defeats
/// this table, with the colors exchanged first when needed. Throws
/// dispatch_gap if nothing matches.
struct Dispatch {
    AdversaryPlan plan;       // in terms of the table actually attacked
    bool colors_swapped = false;
    ColorPair start_colors;   // in terms of the original table
};
[[nodiscard]] Dispatch dispatch_two_colors(const RuleTable& table);

// ---------------------------------------------------------------------------
// Engineered starts

struct DrivePlan {
    Scalar initial_distance;
    ScheduleScript script;
    std::string construction;  // "scale" or "truncate"
};

/// From A,A at `initial_distance`, `script` reaches a configuration with both
/// robots waiting, colors `target` and distance exactly `target_distance`.
/// Truncation by delta is preferred whenever it is legal; otherwise the start
/// is scaled by the move factor. Rigid models only allow scaling.
[[nodiscard]] DrivePlan drive_to_config(const RuleTable& table, ColorPair target, const Scalar& target_distance, const Rigidity& rigidity);

// ---------------------------------------------------------------------------
// Randomized fair scheduling

struct FairnessPolicy {
    /// ASYNCH: every W consecutive events contain a completed cycle of each
    /// live robot. SSYNCH: a robot is never skipped more than W - 2 rounds in
    /// a row. Must be at least 2.
    std::size_t window = 8;
};

enum class TruncationPolicy { always_full, always_delta, uniform };

[[nodiscard]] TruncationPolicy parse_truncation_policy(std::string_view text);

/// Deterministic pseudo-random scheduler honoring a fairness window.
class RandomFairScheduler final : public EventSource {
public:
    RandomFairScheduler(std::uint64_t seed, FairnessPolicy policy, TruncationPolicy truncation, Algorithm algorithm);

    std::optional<Event> next(const Configuration& current) override;

    /// Longest ASYNCH cycle this scheduler emits under the given rigidity.
    [[nodiscard]] std::size_t max_cycle_events(const Rigidity& rigidity) const;

private:
    struct Plan {
        std::vector<Scalar> points;
        std::size_t next = 0;
    };

    std::optional<Event> next_asynch(const Configuration& current);
    Event next_round(const Configuration& current);
    Plan plan_move(const Configuration& current, RobotId r);
    Scalar final_point(const Rigidity& rigidity, const Scalar& start, const Scalar& destination);
    std::size_t remaining_work(const Configuration& c, RobotId r) const;
    std::uint64_t draw(std::uint64_t bound);

    std::mt19937_64 rng_;
    FairnessPolicy policy_;
    TruncationPolicy truncation_;
    Algorithm algorithm_;
    std::size_t emitted_ = 0;
    std::array<long long, 2> last_completion_{-1, -1};
    std::array<std::optional<Plan>, 2> plans_;
    std::array<std::size_t, 2> skipped_{0, 0};
};

/// Runs `algorithm` from `config` under a fresh RandomFairScheduler and
/// records the schedule as "random:<seed>" in the trace metadata.
[[nodiscard]] Trace run_random_fair(const Algorithm& algorithm, const Configuration& config, std::uint64_t seed, FairnessPolicy policy = {},
                                    TruncationPolicy truncation = TruncationPolicy::uniform, const RunOptions& options = {});

/// Checks the fairness window over a trace prefix (windows that fit fully
/// inside the trace). Terminated robots are exempt from then on.
[[nodiscard]] bool satisfies_fairness(const Trace& trace, const FairnessPolicy& policy);

}  // namespace rendezvous
