/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#include "rendezvous/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rendezvous {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::palette: return "palette error";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::illegal_event: return "illegal event";
    case ErrorKind::invalid_move: return "invalid move";
    case ErrorKind::delta_violation: return "delta violation";
    case ErrorKind::terminated_robot: return "terminated robot";
    case ErrorKind::invalid_round: return "invalid round";
    case ErrorKind::precondition_mismatch: return "precondition mismatch";
    case ErrorKind::unreachable_target: return "unreachable target";
    case ErrorKind::dispatch_gap: return "dispatch gap";
    case ErrorKind::unsupported_model: return "unsupported model";
    }
    return "error";
}

namespace {

std::vector<std::string> split_ws(std::string_view line)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Scalar parse_scalar_or_throw(std::string_view text)
{
    try {
        return Scalar::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::parse, e.what());
    }
}

RobotId parse_robot(std::string_view text)
{
    if (text == "0") return 0;
    if (text == "1") return 1;
    throw Error(ErrorKind::parse, "robot id must be 0 or 1, got '" + std::string(text) + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Palette

Palette::Palette(std::vector<std::string> names) : names_(std::move(names))
{
    if (names_.empty()) throw Error(ErrorKind::palette, "palette must contain at least one color");
    if (names_.size() > 255) throw Error(ErrorKind::palette, "palette too large");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw Error(ErrorKind::palette, "empty color name");
        if (!seen.insert(n).second) throw Error(ErrorKind::palette, "duplicate color '" + n + "'");
    }
}

Palette Palette::standard(std::size_t size)
{
    if (size == 0 || size > 26) throw Error(ErrorKind::palette, "standard palettes have 1 to 26 colors");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < size; ++i) names.emplace_back(1, static_cast<char>('A' + i));
    return Palette(std::move(names));
}

const std::string& Palette::name(Color c) const
{
    if (!contains(c)) throw Error(ErrorKind::palette, "color index " + std::to_string(c.index) + " outside palette");
    return names_[c.index];
}

Color Palette::parse(std::string_view name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return Color{static_cast<std::uint8_t>(i)};
    throw Error(ErrorKind::palette, "unknown color '" + std::string(name) + "'");
}

std::vector<Color> Palette::colors() const
{
    std::vector<Color> out;
    for (std::size_t i = 0; i < names_.size(); ++i) out.push_back(Color{static_cast<std::uint8_t>(i)});
    return out;
}

// ---------------------------------------------------------------------------
// Tables

RuleTable::RuleTable(Palette palette, std::vector<Rule> entries, std::string name)
    : palette_(std::move(palette)), entries_(std::move(entries)), name_(std::move(name))
{
    const std::size_t k = palette_.size();
    if (entries_.size() != k * k)
        throw Error(ErrorKind::palette, "rule table needs " + std::to_string(k * k) + " entries, got " + std::to_string(entries_.size()));
    for (const auto& r : entries_)
        if (!palette_.contains(r.next)) throw Error(ErrorKind::palette, "rule turns to a color outside the palette");
}

const Rule& RuleTable::lookup(Color me, Color other) const
{
    if (!palette_.contains(me) || !palette_.contains(other)) throw Error(ErrorKind::palette, "lookup with color outside palette");
    return entries_[me.index * palette_.size() + other.index];
}

RuleTable RuleTable::renamed(std::string name) const { return RuleTable(palette_, entries_, std::move(name)); }

std::string RuleTable::describe() const
{
    std::string out;
    for (Color me : palette_.colors()) {
        for (Color other : palette_.colors()) {
            const Rule& r = lookup(me, other);
            if (!out.empty()) out += ' ';
            out += palette_.name(me) + "(" + palette_.name(other) + ")=(" + palette_.name(r.next) + "," + r.lambda.str() + ")";
        }
    }
    return out;
}

ExtendedRuleTable::ExtendedRuleTable(Palette palette, std::vector<Action> entries, std::string name)
    : palette_(std::move(palette)), entries_(std::move(entries)), name_(std::move(name))
{
    const std::size_t k = palette_.size();
    if (entries_.size() != k * k * 2)
        throw Error(ErrorKind::palette, "extended table needs " + std::to_string(k * k * 2) + " entries, got " + std::to_string(entries_.size()));
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const bool coincident = (i % 2) == 1;
        if (std::holds_alternative<Terminate>(entries_[i]) && !coincident)
            throw Error(ErrorKind::palette, "TERMINATE is only allowed on coincident entries");
        if (const auto* r = std::get_if<Rule>(&entries_[i]); r && !palette_.contains(r->next))
            throw Error(ErrorKind::palette, "rule turns to a color outside the palette");
    }
}

const Action& ExtendedRuleTable::lookup(Color me, Color other, bool coincident) const
{
    if (!palette_.contains(me) || !palette_.contains(other)) throw Error(ErrorKind::palette, "lookup with color outside palette");
    return entries_[(me.index * palette_.size() + other.index) * 2 + (coincident ? 1 : 0)];
}

Action Algorithm::decide(Color me, Color other, bool coincident) const
{
    if (const auto* t = std::get_if<RuleTable>(&table_)) return t->lookup(me, other);
    return std::get<ExtendedRuleTable>(table_).lookup(me, other, coincident);
}

const Palette& Algorithm::palette() const
{
    return std::visit([](const auto& t) -> const Palette& { return t.palette(); }, table_);
}

const std::string& Algorithm::name() const
{
    return std::visit([](const auto& t) -> const std::string& { return t.name(); }, table_);
}

Algorithm parse_table(std::string_view text, std::string name)
{
    std::optional<Palette> palette;
    struct Line {
        std::size_t number;
        std::vector<std::string> tokens;
    };
    std::vector<Line> lines;

    std::size_t number = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++number;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (line.starts_with("palette:")) {
            if (palette) throw Error(ErrorKind::parse, "line " + std::to_string(number) + ": duplicate palette header");
            palette = Palette(split_ws(line.substr(8)));
            continue;
        }
        lines.push_back({number, split_ws(line)});
    }
    if (!palette) throw Error(ErrorKind::parse, "missing 'palette:' header");

    const std::size_t k = palette->size();
    bool extended = false;
    for (const auto& l : lines)
        for (const auto& t : l.tokens)
            if (t == "coincident" || t == "!coincident" || t == "TERMINATE") extended = true;

    std::vector<std::optional<Action>> slots(k * k * 2);
    for (const auto& l : lines) {
        const auto where = "line " + std::to_string(l.number) + ": ";
        const auto& t = l.tokens;
        const auto arrow = std::find(t.begin(), t.end(), "->");
        if (arrow == t.end()) throw Error(ErrorKind::parse, where + "expected '->'");
        const auto lhs = static_cast<std::size_t>(arrow - t.begin());
        if (lhs < 2 || lhs > 3) throw Error(ErrorKind::parse, where + "expected '<me> <other> [coincident|!coincident] ->'");
        const Color me = palette->parse(t[0]);
        const Color other = palette->parse(t[1]);
        std::vector<int> coincidence{0, 1};
        if (lhs == 3) {
            if (t[2] == "coincident") coincidence = {1};
            else if (t[2] == "!coincident") coincidence = {0};
            else throw Error(ErrorKind::parse, where + "unknown qualifier '" + t[2] + "'");
        }
        const std::vector<std::string> rhs(arrow + 1, t.end());
        Action action;
        if (rhs.size() == 1 && rhs[0] == "TERMINATE") {
            action = Terminate{};
        } else if (rhs.size() == 2) {
            action = Rule{palette->parse(rhs[0]), parse_scalar_or_throw(rhs[1])};
        } else {
            throw Error(ErrorKind::parse, where + "expected '<color> <lambda>' or 'TERMINATE'");
        }
        for (int c : coincidence) {
            auto& slot = slots[(me.index * k + other.index) * 2 + static_cast<std::size_t>(c)];
            if (slot) throw Error(ErrorKind::parse, where + "duplicate entry for " + t[0] + " " + t[1]);
            slot = action;
        }
    }

    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i]) {
            const auto pair = i / 2;
            throw Error(ErrorKind::palette, "table is not total: missing " + palette->names()[pair / k] + " " + palette->names()[pair % k] +
                                                (extended ? (i % 2 ? " coincident" : " !coincident") : ""));
        }
    }

    if (extended) {
        std::vector<Action> entries;
        for (auto& s : slots) entries.push_back(*s);
        return ExtendedRuleTable(*palette, std::move(entries), std::move(name));
    }
    std::vector<Rule> entries;
    for (std::size_t i = 0; i < slots.size(); i += 2) {
        if (!(slots[i] == slots[i + 1])) throw Error(ErrorKind::parse, "inconsistent class-L entry");
        entries.push_back(std::get<Rule>(*slots[i]));
    }
    return RuleTable(*palette, std::move(entries), std::move(name));
}

namespace {

std::string palette_header(const Palette& p)
{
    std::string out = "palette:";
    for (const auto& n : p.names()) out += " " + n;
    return out + "\n";
}

std::string format_action(const Palette& p, const Action& a)
{
    if (std::holds_alternative<Terminate>(a)) return "TERMINATE";
    const auto& r = std::get<Rule>(a);
    return p.name(r.next) + " " + r.lambda.str();
}

}  // namespace

std::string format_table(const RuleTable& table)
{
    const auto& p = table.palette();
    std::string out = palette_header(p);
    for (Color me : p.colors())
        for (Color other : p.colors())
            out += p.name(me) + " " + p.name(other) + " -> " + format_action(p, table.lookup(me, other)) + "\n";
    return out;
}

std::string format_table(const ExtendedRuleTable& table)
{
    const auto& p = table.palette();
    std::string out = palette_header(p);
    for (Color me : p.colors())
        for (Color other : p.colors())
            for (bool coincident : {false, true})
                out += p.name(me) + " " + p.name(other) + (coincident ? " coincident -> " : " !coincident -> ") +
                       format_action(p, table.lookup(me, other, coincident)) + "\n";
    return out;
}

std::string format_table(const Algorithm& algorithm)
{
    if (algorithm.is_class_l()) return format_table(algorithm.rule_table());
    // Rebuild through decide() to avoid exposing the variant.
    const auto& p = algorithm.palette();
    std::string out = palette_header(p);
    for (Color me : p.colors())
        for (Color other : p.colors())
            for (bool coincident : {false, true})
                out += p.name(me) + " " + p.name(other) + (coincident ? " coincident -> " : " !coincident -> ") +
                       format_action(p, algorithm.decide(me, other, coincident)) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// State

std::string_view phase_name(const Phase& phase)
{
    switch (phase.index()) {
    case 0: return "wait";
    case 1: return "compute";
    case 2: return "move";
    default: return "terminated";
    }
}

Rigidity Rigidity::non_rigid(Scalar delta)
{
    if (delta.sign() <= 0) throw Error(ErrorKind::unsupported_model, "delta must be positive");
    Rigidity r;
    r.delta_ = std::move(delta);
    return r;
}

std::string Rigidity::str() const { return is_rigid() ? "rigid" : "non-rigid(" + delta_->str() + ")"; }

std::string_view to_string(SchedulerKind kind)
{
    switch (kind) {
    case SchedulerKind::fsynch: return "fsynch";
    case SchedulerKind::ssynch: return "ssynch";
    case SchedulerKind::asynch: return "asynch";
    }
    return "?";
}

SchedulerKind parse_scheduler_kind(std::string_view text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "fsynch") return SchedulerKind::fsynch;
    if (lower == "ssynch") return SchedulerKind::ssynch;
    if (lower == "asynch") return SchedulerKind::asynch;
    throw Error(ErrorKind::parse, "unknown scheduler model '" + std::string(text) + "'");
}

Configuration Configuration::initial(SchedulerKind model, Rigidity rigidity, Color c0, Color c1, const Scalar& distance)
{
    Configuration c;
    c.model = model;
    c.rigidity = std::move(rigidity);
    c.robots[0] = RobotState{0, Scalar(0), c0, Waiting{}, 0};
    c.robots[1] = RobotState{1, distance, c1, Waiting{}, 0};
    return c;
}

// ---------------------------------------------------------------------------
// Events

std::string format_event(const Event& event)
{
    struct Visitor {
        std::string operator()(const Look& e) const { return "look " + std::to_string(e.robot); }
        std::string operator()(const FinishCompute& e) const { return "compute " + std::to_string(e.robot); }
        std::string operator()(const MoveStep& e) const
        {
            return "movestep " + std::to_string(e.robot) + " " + (e.point ? e.point->str() : std::string("dest"));
        }
        std::string operator()(const FinishMove& e) const { return "endmove " + std::to_string(e.robot); }
        std::string operator()(const Round& e) const
        {
            std::string out = "round ";
            for (std::size_t i = 0; i < e.active.size(); ++i) out += (i ? "," : "") + std::to_string(e.active[i]);
            if (!e.truncation.empty()) {
                out += " trunc";
                for (const auto& [r, p] : e.truncation) out += " " + std::to_string(r) + "=" + p.str();
            }
            return out;
        }
    };
    return std::visit(Visitor{}, event);
}

Event parse_event(std::string_view line)
{
    const auto t = split_ws(line);
    if (t.empty()) throw Error(ErrorKind::parse, "empty event");
    const auto& op = t[0];
    auto expect = [&](std::size_t n) {
        if (t.size() != n) throw Error(ErrorKind::parse, "'" + std::string(trim(line)) + "': wrong number of arguments");
    };
    if (op == "look") {
        expect(2);
        return Look{parse_robot(t[1])};
    }
    if (op == "compute") {
        expect(2);
        return FinishCompute{parse_robot(t[1])};
    }
    if (op == "endmove") {
        expect(2);
        return FinishMove{parse_robot(t[1])};
    }
    if (op == "movestep") {
        expect(3);
        if (t[2] == "dest") return MoveStep{parse_robot(t[1]), std::nullopt};
        return MoveStep{parse_robot(t[1]), parse_scalar_or_throw(t[2])};
    }
    if (op == "round") {
        if (t.size() < 2) throw Error(ErrorKind::parse, "round needs an active set");
        Round round;
        std::string_view ids = t[1];
        while (!ids.empty()) {
            const auto comma = ids.find(',');
            round.active.push_back(parse_robot(ids.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            ids.remove_prefix(comma + 1);
        }
        std::sort(round.active.begin(), round.active.end());
        if (std::adjacent_find(round.active.begin(), round.active.end()) != round.active.end())
            throw Error(ErrorKind::parse, "duplicate robot in round");
        std::size_t i = 2;
        if (i < t.size()) {
            if (t[i] != "trunc") throw Error(ErrorKind::parse, "expected 'trunc', got '" + t[i] + "'");
            for (++i; i < t.size(); ++i) {
                const auto eq = t[i].find('=');
                if (eq == std::string::npos) throw Error(ErrorKind::parse, "truncation must be <robot>=<point>");
                const RobotId r = parse_robot(std::string_view(t[i]).substr(0, eq));
                if (!round.truncation.emplace(r, parse_scalar_or_throw(std::string_view(t[i]).substr(eq + 1))).second)
                    throw Error(ErrorKind::parse, "duplicate truncation for robot " + std::to_string(r));
            }
        }
        return round;
    }
    throw Error(ErrorKind::parse, "unknown event '" + op + "'");
}

Event relabel(const Event& event)
{
    struct Visitor {
        Event operator()(Look e) const { return Look{1 - e.robot}; }
        Event operator()(FinishCompute e) const { return FinishCompute{1 - e.robot}; }
        Event operator()(MoveStep e) const { return MoveStep{1 - e.robot, e.point}; }
        Event operator()(FinishMove e) const { return FinishMove{1 - e.robot}; }
        Event operator()(const Round& e) const
        {
            Round out;
            for (RobotId r : e.active) out.active.push_back(1 - r);
            std::sort(out.active.begin(), out.active.end());
            for (const auto& [r, p] : e.truncation) out.truncation.emplace(1 - r, p);
            return out;
        }
    };
    return std::visit(Visitor{}, event);
}

}  // namespace rendezvous
