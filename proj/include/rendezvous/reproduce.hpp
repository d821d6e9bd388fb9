/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#pragma once

#include "rendezvous/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rendezvous {

/// One re-executed check backing a cell of the color-count table.
struct Evidence {
    std::string id;
    std::string claim;
    bool passed = false;
    std::string detail;
};

/// Minimum number of colors for one (scheduler, rigidity, start) model.
struct Cell {
    std::string id;  // e.g. "asynch-nonrigid-preset"
    int colors = 0;
    std::vector<Evidence> evidence;

    [[nodiscard]] bool passed() const;
};

struct ReproduceOptions {
    std::optional<std::string> cell;
    /// Replaces the built-in two-color table in the positive evidence.
    std::optional<RuleTable> alg1_table;
    std::size_t seeds = 20;
    std::size_t jobs = 1;
};

/// Known cell ids, in table order.
[[nodiscard]] const std::vector<std::string>& cell_ids();

/// Re-executes the evidence for the selected cells. Throws Error(parse) for
/// an unknown cell id.
[[nodiscard]] std::vector<Cell> reproduce(const ReproduceOptions& options);

/// Color-count grid followed by per-cell evidence lines.
[[nodiscard]] std::string format_reproduction(const std::vector<Cell>& cells);

}  // namespace rendezvous
