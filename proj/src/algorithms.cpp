/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#include "rendezvous/algorithms.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace rendezvous {

namespace {

constexpr Color A{0};
constexpr Color B{1};
constexpr Color C{2};

Rule rule(Color next, long num, long den = 1) { return Rule{next, Scalar(num, den)}; }

}  // namespace

RuleTable alg1()
{
    // Entries in (me, other) order: AA, AB, BA, BB.
    return RuleTable(Palette::standard(2),
                     {
                         rule(B, 1, 2),  // A(A): turn B, midpoint
                         rule(A, 1),     // A(B): chase
                         rule(B, 0),     // B(A): stay
                         rule(A, 0),     // B(B): turn A, stay
                     },
                     "alg1");
}

RuleTable alg3()
{
    return RuleTable(Palette::standard(3),
                     {
                         rule(B, 1, 2), rule(A, 1), rule(A, 0),  // A(A) A(B) A(C)
                         rule(B, 0), rule(C, 0), rule(B, 1),     // B(A) B(B) B(C)
                         rule(C, 1), rule(C, 0), rule(A, 0),     // C(A) C(B) C(C)
                     },
                     "alg3");
}

ExtendedRuleTable alg2()
{
    // Per (me, other): {not coincident, coincident}.
    const Action stay_c = rule(C, 0);
    return ExtendedRuleTable(Palette::standard(3),
                             {
                                 rule(B, 1, 2), stay_c,      // A(A)
                                 rule(A, 1), rule(A, 1),     // A(B)
                                 rule(A, 1), stay_c,         // A(C)
                                 rule(B, 1), stay_c,         // B(A)
                                 rule(A, 0), rule(A, 0),     // B(B)
                                 rule(B, 1), stay_c,         // B(C)
                                 stay_c, stay_c,             // C(A)
                                 stay_c, stay_c,             // C(B)
                                 rule(A, 0), Terminate{},    // C(C)
                             },
                             "alg2");
}

RuleTable one_color_midpoint() { return RuleTable(Palette::standard(1), {rule(A, 1, 2)}, "one-color"); }

// ---------------------------------------------------------------------------

LambdaGrid::LambdaGrid(std::vector<Scalar> values) : values_(std::move(values))
{
    if (values_.empty()) throw Error(ErrorKind::parse, "lambda grid must not be empty");
    for (std::size_t i = 0; i < values_.size(); ++i)
        for (std::size_t j = i + 1; j < values_.size(); ++j)
            if (values_[i] == values_[j]) throw Error(ErrorKind::parse, "lambda grid values must be distinct");
}

LambdaGrid LambdaGrid::standard() { return LambdaGrid({Scalar(0), Scalar(1, 2), Scalar(1)}); }

LambdaGrid LambdaGrid::parse(std::string_view text)
{
    std::vector<Scalar> values;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        try {
            values.push_back(Scalar::parse(item));
        } catch (const std::exception& e) {
            throw Error(ErrorKind::parse, e.what());
        }
    }
    return LambdaGrid(std::move(values));
}

std::string LambdaGrid::str() const
{
    std::string out;
    for (const auto& v : values_) out += (out.empty() ? "" : ",") + v.str();
    return out;
}

ClassLEnumeration::ClassLEnumeration(std::size_t palette_size, LambdaGrid grid) : palette_size_(palette_size), grid_(std::move(grid))
{
    if (palette_size_ == 0) throw Error(ErrorKind::palette, "palette size must be at least 1");
    const std::uint64_t radix = palette_size_ * grid_.size();
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < palette_size_ * palette_size_; ++i) {
        if (count > std::numeric_limits<std::uint64_t>::max() / radix) throw Error(ErrorKind::palette, "enumeration too large");
        count *= radix;
    }
    count_ = count;
}

RuleTable ClassLEnumeration::at(std::uint64_t index) const
{
    if (index >= count_) throw Error(ErrorKind::parse, "table index " + std::to_string(index) + " out of range");
    const std::uint64_t radix = palette_size_ * grid_.size();
    const std::size_t n = palette_size_ * palette_size_;
    std::vector<Rule> entries(n);
    for (std::size_t i = n; i-- > 0;) {
        const std::uint64_t digit = index % radix;
        index /= radix;
        entries[i] = Rule{Color{static_cast<std::uint8_t>(digit / grid_.size())}, grid_.values()[digit % grid_.size()]};
    }
    return RuleTable(Palette::standard(palette_size_), std::move(entries));
}

std::optional<std::uint64_t> ClassLEnumeration::index_of(const RuleTable& table) const
{
    if (table.palette().size() != palette_size_) return std::nullopt;
    const std::uint64_t radix = palette_size_ * grid_.size();
    std::uint64_t index = 0;
    for (const auto& r : table.entries()) {
        const auto& g = grid_.values();
        const auto it = std::find(g.begin(), g.end(), r.lambda);
        if (it == g.end()) return std::nullopt;
        index = index * radix + r.next.index * grid_.size() + static_cast<std::uint64_t>(it - g.begin());
    }
    return index;
}

RuleTable swap_colors(const RuleTable& table)
{
    if (table.palette().size() != 2) throw Error(ErrorKind::palette, "color swap needs a two-color palette");
    auto sw = [](Color c) { return Color{static_cast<std::uint8_t>(1 - c.index)}; };
    std::vector<Rule> entries;
    for (Color me : table.palette().colors())
        for (Color other : table.palette().colors()) {
            const Rule& r = table.lookup(sw(me), sw(other));
            entries.push_back(Rule{sw(r.next), r.lambda});
        }
    return RuleTable(table.palette(), std::move(entries), table.name().empty() ? std::string{} : table.name() + "~swapped");
}

Algorithm resolve_algorithm(std::string_view text)
{
    if (text == "alg1") return alg1();
    if (text == "alg2") return alg2();
    if (text == "alg3") return alg3();
    if (text == "one-color") return one_color_midpoint();
    if (text.starts_with("enum:")) {
        const std::string rest(text.substr(5));
        const auto first = rest.find(':');
        const auto last = rest.rfind(':');
        if (first == std::string::npos || first == last) throw Error(ErrorKind::parse, "expected enum:<palette>:<grid>:<index>");
        try {
            const std::size_t k = std::stoul(rest.substr(0, first));
            const auto grid = LambdaGrid::parse(rest.substr(first + 1, last - first - 1));
            const std::uint64_t index = std::stoull(rest.substr(last + 1));
            return ClassLEnumeration(k, grid).at(index).renamed(std::string(text));
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw Error(ErrorKind::parse, std::string("bad enumerated table text: ") + e.what());
        }
    }
    std::ifstream in{std::string(text)};
    if (!in) throw Error(ErrorKind::parse, "unknown algorithm '" + std::string(text) + "' (not a built-in name or readable file)");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_table(buf.str(), std::string(text));
}

}  // namespace rendezvous
