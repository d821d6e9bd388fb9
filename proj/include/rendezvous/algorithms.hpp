/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#pragma once

#include "rendezvous/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rendezvous {

/// Two colors, preset or arbitrary start; rigid ASYNCH only from A,A.
[[nodiscard]] RuleTable alg1();
/// Three colors, non-rigid ASYNCH from any start.
[[nodiscard]] RuleTable alg3();
/// Three colors with the coincidence predicate; terminates once gathered.
[[nodiscard]] ExtendedRuleTable alg2();
/// Single color, always move to the midpoint.
[[nodiscard]] RuleTable one_color_midpoint();

/// Ordered set of distinct move parameters.
class LambdaGrid {
public:
    explicit LambdaGrid(std::vector<Scalar> values);
    /// {0, 1/2, 1}
    static LambdaGrid standard();
    /// Comma-separated list, e.g. "0,1/2,1".
    static LambdaGrid parse(std::string_view text);

    [[nodiscard]] const std::vector<Scalar>& values() const { return values_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::string str() const;

private:
    std::vector<Scalar> values_;
};

/// Every total class-L table over a standard palette with lambdas drawn from
/// a grid. Table i is a mixed-radix number whose digits, most significant
/// first, are the (me, other) pairs in palette order; each digit encodes
/// next_color * |grid| + lambda_index.
class ClassLEnumeration {
public:
    ClassLEnumeration(std::size_t palette_size, LambdaGrid grid);

    [[nodiscard]] std::uint64_t count() const { return count_; }
    [[nodiscard]] RuleTable at(std::uint64_t index) const;
    /// Index of `table` in this enumeration, if its palette and lambdas fit.
    [[nodiscard]] std::optional<std::uint64_t> index_of(const RuleTable& table) const;

    [[nodiscard]] std::size_t palette_size() const { return palette_size_; }
    [[nodiscard]] const LambdaGrid& grid() const { return grid_; }

    /// Forward iteration over the whole family.
    class iterator {
    public:
        using value_type = RuleTable;
        using difference_type = std::ptrdiff_t;
        iterator(const ClassLEnumeration* e, std::uint64_t i) : e_(e), i_(i) {}
        RuleTable operator*() const { return e_->at(i_); }
        iterator& operator++()
        {
            ++i_;
            return *this;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.i_ == b.i_; }

    private:
        const ClassLEnumeration* e_;
        std::uint64_t i_;
    };
    [[nodiscard]] iterator begin() const { return {this, 0}; }
    [[nodiscard]] iterator end() const { return {this, count_}; }

private:
    std::size_t palette_size_;
    LambdaGrid grid_;
    std::uint64_t count_;
};

/// Table with colors A and B exchanged: T'(X, Y) = swap(T(swap X, swap Y)).
/// Requires a two-color palette.
[[nodiscard]] RuleTable swap_colors(const RuleTable& table);

/// Resolves "alg1", "alg2", "alg3", "one-color", "enum:<palette>:<grid>:<index>"
/// or a path to a table file.
[[nodiscard]] Algorithm resolve_algorithm(std::string_view text);

}  // namespace rendezvous
