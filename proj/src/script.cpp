/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#include "rendezvous/script.hpp"

#include <array>
#include <sstream>

namespace rendezvous {

std::vector<Event> ScheduleScript::period_instance(std::size_t index) const
{
    if (!relabel_period || index % 2 == 0) return period;
    std::vector<Event> out;
    out.reserve(period.size());
    for (const auto& e : period) out.push_back(relabel(e));
    return out;
}

std::vector<Event> ScheduleScript::unrolled(std::size_t repetitions) const
{
    std::vector<Event> out = prefix;
    for (std::size_t i = 0; i < repetitions && periodic(); ++i) {
        auto p = period_instance(i);
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

namespace {

struct Line {
    std::size_t number;
    std::string text;
};

std::string strip(std::string s)
{
    if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const Line& l, const std::string& what)
{
    throw Error(ErrorKind::parse, "script line " + std::to_string(l.number) + ": " + what);
}

// Parses lines[pos..] until a closing '}' (when nested) or end of input.
std::vector<Event> parse_block(const std::vector<Line>& lines, std::size_t& pos, bool nested, ScheduleScript* top)
{
    std::vector<Event> out;
    while (pos < lines.size()) {
        const Line& l = lines[pos];
        if (l.text == "}") {
            if (!nested) fail(l, "unbalanced '}'");
            ++pos;
            return out;
        }
        if (l.text.starts_with("repeat")) {
            std::istringstream in(l.text);
            std::string kw, brace;
            long long n = -1;
            in >> kw >> n >> brace;
            if (kw != "repeat" || n < 0 || brace != "{") fail(l, "expected 'repeat N {'");
            ++pos;
            auto body = parse_block(lines, pos, true, nullptr);
            for (long long i = 0; i < n; ++i) out.insert(out.end(), body.begin(), body.end());
            continue;
        }
        if (l.text.starts_with("period")) {
            if (top == nullptr || nested) fail(l, "'period' is only allowed at top level");
            if (top->periodic()) fail(l, "only one 'period' block is allowed");
            std::istringstream in(l.text);
            std::string kw, a, b;
            in >> kw >> a >> b;
            bool relabel_ids = false;
            if (a == "relabel" && b == "{") relabel_ids = true;
            else if (!(a == "{" && b.empty())) fail(l, "expected 'period {' or 'period relabel {'");
            ++pos;
            top->period = parse_block(lines, pos, true, nullptr);
            top->relabel_period = relabel_ids;
            if (top->period.empty()) fail(l, "empty period");
            if (pos != lines.size()) fail(lines[pos], "nothing may follow the period block");
            return out;
        }
        try {
            out.push_back(parse_event(l.text));
        } catch (const Error& e) {
            fail(l, e.what());
        }
        ++pos;
    }
    if (nested) throw Error(ErrorKind::parse, "script: missing '}'");
    return out;
}

}  // namespace

ScheduleScript parse_script(std::string_view text)
{
    std::vector<Line> lines;
    std::istringstream in{std::string(text)};
    std::size_t number = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++number;
        auto s = strip(raw);
        if (!s.empty()) lines.push_back({number, std::move(s)});
    }
    ScheduleScript script;
    std::size_t pos = 0;
    script.prefix = parse_block(lines, pos, false, &script);
    return script;
}

std::string format_script(const ScheduleScript& script)
{
    std::string out;
    for (const auto& e : script.prefix) out += format_event(e) + "\n";
    if (script.periodic()) {
        out += script.relabel_period ? "period relabel {\n" : "period {\n";
        for (const auto& e : script.period) out += "  " + format_event(e) + "\n";
        out += "}\n";
    }
    return out;
}

namespace {

std::vector<Event> fill_moves(const std::vector<Event>& events, std::array<bool, 2>& stepped)
{
    std::vector<Event> out;
    for (const auto& e : events) {
        if (const auto* s = std::get_if<MoveStep>(&e)) stepped[static_cast<std::size_t>(s->robot)] = true;
        if (const auto* f = std::get_if<FinishMove>(&e)) {
            auto& st = stepped[static_cast<std::size_t>(f->robot)];
            if (!st) out.emplace_back(MoveStep{f->robot, std::nullopt});
            st = false;
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace

ScheduleScript with_full_moves(const ScheduleScript& script)
{
    std::array<bool, 2> stepped{false, false};
    ScheduleScript out;
    out.prefix = fill_moves(script.prefix, stepped);
    out.period = fill_moves(script.period, stepped);
    out.relabel_period = script.relabel_period;
    return out;
}

}  // namespace rendezvous
