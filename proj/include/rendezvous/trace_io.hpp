/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#pragma once

#include "rendezvous/semantics.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rendezvous {

/// One JSON object per line: an "init" line for the initial configuration
/// (index 0, carrying the run metadata), then one line per step with
/// {index, event, robots: [{id, pos, light, phase, dest?}], distance}.
void write_trace_jsonl(std::ostream& out, const Trace& trace, const Palette& palette);

/// The fields of one trace line that plotting needs.
struct TraceRecord {
    std::size_t index = 0;
    std::string event;
    std::string distance;
    std::string light[2];
    std::string phase[2];
};

/// Throws Error(parse) on malformed input. Blank lines are skipped.
[[nodiscard]] std::vector<TraceRecord> read_trace_jsonl(std::istream& in);

/// event_index,distance,light0,light1,phase0,phase1 with a header line.
void write_plotdata(std::ostream& out, const std::vector<TraceRecord>& records);

}  // namespace rendezvous
