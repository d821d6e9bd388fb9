/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#pragma once

#include "rendezvous/adversaries.hpp"
#include "rendezvous/algorithms.hpp"
#include "rendezvous/model.hpp"
#include "rendezvous/script.hpp"
#include "rendezvous/semantics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rendezvous {

// ---------------------------------------------------------------------------
// Scaling certificates

/// A periodic segment after which the joint state comes back up to an exact
/// positive rescaling, possibly with the two robots exchanged. With
/// `swapped`, the segment is replayed with robot ids exchanged on every other
/// repetition.
struct ScalingCertificate {
    ScheduleScript script;  // prefix reaches `start`; period is the certified segment
    Scalar factor;
    bool swapped = false;
    Configuration start;
    Configuration end;
};

enum class Rejection { illegal_segment, absolute_coordinates, zero_distance, color_mismatch, phase_mismatch, no_full_cycle, truncated_move, not_periodic };

[[nodiscard]] std::string_view to_string(Rejection r);

struct CertificateCheck {
    std::optional<ScalingCertificate> certificate;
    Rejection rejection = Rejection::not_periodic;
    std::string detail;

    explicit operator bool() const { return certificate.has_value(); }
};

/// Plays `candidate.prefix` from `config`, then one period, and checks the
/// self-similarity conditions with exact arithmetic.
[[nodiscard]] CertificateCheck check_certificate(const Algorithm& algorithm, const Configuration& config, const ScheduleScript& candidate);

/// Text form: comment header with factor and permutation, then the script.
[[nodiscard]] std::string format_certificate(const ScalingCertificate& cert);

// ---------------------------------------------------------------------------
// Verdicts

struct GathersProven {
    std::size_t depth;
    std::size_t states;
};
struct GathersObserved {
    std::size_t events;
    StopReason stop;
};
struct NonGathering {
    ScalingCertificate certificate;
    std::size_t states = 0;
};
struct Defeated {
    std::string adversary;
    ScalingCertificate certificate;
};
struct Unknown {
    std::size_t depth;
    std::size_t states;
    std::string reason;
};

using Verdict = std::variant<GathersProven, GathersObserved, NonGathering, Defeated, Unknown>;

[[nodiscard]] std::string verdict_name(const Verdict& v);

// ---------------------------------------------------------------------------
// Exhaustive exploration of rigid models

struct ExploreLimits {
    std::size_t depth = 200;
    std::size_t max_states = 200'000;
};

/// Breadth-first search over scale-normalized states (robot 0 at 0, robot 1
/// at 1, pending destinations as exact offsets), branching over every
/// scheduler choice. A reachable strongly connected set of non-gathered
/// states in which both robots complete cycles yields a certificate; a
/// closed search without one proves gathering under every fair schedule.
[[nodiscard]] Verdict bounded_explore_rigid(const RuleTable& table, std::pair<Color, Color> start_colors, SchedulerKind model,
                                            const ExploreLimits& limits = {});

// ---------------------------------------------------------------------------
// Two-color sweep

enum class SweepModel { rigid_asynch_arbitrary, rigid_asynch_preset_aa, nonrigid_asynch_preset };

[[nodiscard]] std::string_view to_string(SweepModel m);
[[nodiscard]] SweepModel parse_sweep_model(std::string_view text);

struct SweepEntry {
    std::uint64_t index = 0;
    std::string rules;
    std::string verdict;    // "defeated", "survived", "unknown", "adversary-failed"
    std::string adversary;  // plan id, "drive+<id>" or "explorer"
    std::optional<Scalar> factor;
    std::optional<Scalar> initial_distance;
    std::string construction;
    std::string note;
};

struct SweepReport {
    SweepModel model;
    std::string grid;
    std::uint64_t total = 0;
    std::vector<SweepEntry> entries;  // ordered by index

    [[nodiscard]] std::vector<std::uint64_t> survivors() const;
    [[nodiscard]] std::size_t count(std::string_view verdict) const;
    /// Survivor set is what the model predicts: empty, or for the preset
    /// start a nonempty set containing alg1 and no unresolved tables.
    [[nodiscard]] bool as_expected() const;
    [[nodiscard]] std::string to_json() const;
    [[nodiscard]] std::string to_text() const;
};

struct SweepOptions {
    std::size_t jobs = 1;
    ExploreLimits limits{};
};

/// Runs every two-color table on `grid` against the model's adversary.
/// Throws dispatch_gap if a table matches no case.
[[nodiscard]] SweepReport sweep_two_colors(const LambdaGrid& grid, SweepModel model, const SweepOptions& options = {});

/// Verdict for one table; what the sweep records per index.
[[nodiscard]] SweepEntry sweep_one(const RuleTable& table, SweepModel model, const ExploreLimits& limits = {});

// ---------------------------------------------------------------------------
// Trace checks

struct TraceCheck {
    bool ok = true;
    std::string detail;

    explicit operator bool() const { return ok; }
};

inline constexpr std::uint64_t kCycleSlack = 8;

/// Gathered, with at most ceil(d0 / delta) + kCycleSlack moving cycles per
/// robot, and distance never increasing across a round. Throws
/// unsupported_model unless the trace is non-rigid with this delta.
[[nodiscard]] TraceCheck check_gathering_bound(const Trace& trace, const Scalar& delta, const Scalar& d0);

/// Between successive configurations in which both robots wait with the same
/// color X, the distance drops by at least 2 delta or reaches 0.
[[nodiscard]] TraceCheck check_super_round_decrease(const Trace& trace, const Scalar& delta);

/// Once the lights differ and no robot has a pending color change, the
/// lights never change again.
[[nodiscard]] TraceCheck check_color_stability(const Trace& trace, const Algorithm& algorithm);

/// Both robots end terminated at one point and no robot terminates while
/// the robots are apart.
[[nodiscard]] TraceCheck check_termination(const Trace& trace);

/// No robot lit `color` ever commits to a destination other than its
/// current position.
[[nodiscard]] TraceCheck check_stationary_color(const Trace& trace, Color color);

}  // namespace rendezvous
