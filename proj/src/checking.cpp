/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#include "rendezvous/checking.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace rendezvous {

namespace {

// ---------------------------------------------------------------------------
// Normalized robot states

struct Pending {
    bool terminate = false;
    Color next;
    Scalar target;
};

// What a robot will do next, independent of how it got there.
struct NormRobot {
    Color light;
    std::size_t tag = 0;  // Phase index
    std::optional<Pending> pending;
    Scalar position;
};

std::optional<Pending> pending_of(const RobotState& r, const Algorithm& algorithm)
{
    if (const auto* c = std::get_if<Computing>(&r.phase)) {
        const Snapshot& s = c->snapshot;
        const Action a = algorithm.decide(s.my_color, s.other_color, s.my_position == s.other_position);
        if (std::holds_alternative<Terminate>(a)) return Pending{true, {}, {}};
        const auto& rule = std::get<Rule>(a);
        return Pending{false, rule.next, convex_point(s.my_position, s.other_position, rule.lambda)};
    }
    if (const auto* mv = r.moving()) return Pending{false, r.light, mv->destination};
    return std::nullopt;
}

Scalar to_unit(const Scalar& x, const Scalar& origin, const Scalar& unit) { return (x - origin) / unit; }

std::array<NormRobot, 2> normalize(const Configuration& c, const Algorithm& algorithm, const Scalar& origin, const Scalar& unit, bool swap)
{
    std::array<NormRobot, 2> out;
    for (RobotId slot : {0, 1}) {
        const RobotState& r = c.robot(swap ? 1 - slot : slot);
        NormRobot& n = out[static_cast<std::size_t>(slot)];
        n.light = r.light;
        n.tag = r.phase.index();
        n.position = to_unit(r.position, origin, unit);
        n.pending = pending_of(r, algorithm);
        if (n.pending && !n.pending->terminate) n.pending->target = to_unit(n.pending->target, origin, unit);
    }
    return out;
}

// First difference between two normalized states, if any.
std::optional<std::pair<Rejection, std::string>> compare(const std::array<NormRobot, 2>& a, const std::array<NormRobot, 2>& b, const Palette& palette)
{
    for (std::size_t i = 0; i < 2; ++i) {
        if (a[i].light != b[i].light)
            return std::pair{Rejection::color_mismatch, "slot " + std::to_string(i) + " light " + palette.name(a[i].light) + " vs " + palette.name(b[i].light)};
    }
    for (std::size_t i = 0; i < 2; ++i) {
        const std::string slot = "slot " + std::to_string(i);
        if (a[i].tag != b[i].tag) return std::pair{Rejection::phase_mismatch, slot + " phase differs"};
        if (a[i].position != b[i].position) return std::pair{Rejection::phase_mismatch, slot + " position differs"};
        if (a[i].pending.has_value() != b[i].pending.has_value()) return std::pair{Rejection::phase_mismatch, slot + " pending action differs"};
        if (a[i].pending) {
            const Pending& p = *a[i].pending;
            const Pending& q = *b[i].pending;
            if (p.terminate != q.terminate || (!p.terminate && (p.next != q.next || p.target != q.target)))
                return std::pair{Rejection::phase_mismatch, slot + " pending action differs"};
        }
    }
    return std::nullopt;
}

bool uses_coordinates(const Event& e)
{
    if (const auto* s = std::get_if<MoveStep>(&e)) return s->point.has_value();
    if (const auto* r = std::get_if<Round>(&e)) return !r->truncation.empty();
    return false;
}

}  // namespace

std::string_view to_string(Rejection r)
{
    switch (r) {
    case Rejection::illegal_segment: return "illegal-segment";
    case Rejection::absolute_coordinates: return "absolute-coordinates";
    case Rejection::zero_distance: return "zero-distance";
    case Rejection::color_mismatch: return "color-mismatch";
    case Rejection::phase_mismatch: return "phase-mismatch";
    case Rejection::no_full_cycle: return "no-full-cycle";
    case Rejection::truncated_move: return "truncated-move";
    case Rejection::not_periodic: return "not-periodic";
    }
    return "?";
}

CertificateCheck check_certificate(const Algorithm& algorithm, const Configuration& config, const ScheduleScript& candidate)
{
    CertificateCheck out;
    auto reject = [&](Rejection r, std::string detail) {
        out.rejection = r;
        out.detail = std::move(detail);
        return out;
    };
    if (!candidate.periodic()) return reject(Rejection::not_periodic, "script has no period");
    for (const Event& e : candidate.period)
        if (uses_coordinates(e)) return reject(Rejection::absolute_coordinates, "period event '" + format_event(e) + "' names a point");

    Configuration current = config;
    std::size_t index = 0;
    try {
        for (const Event& e : candidate.prefix) {
            current = apply_event(current, algorithm, e);
            ++index;
        }
    } catch (const Error& e) {
        return reject(Rejection::illegal_segment, std::string(e.at_event(index).what()));
    }

    const Configuration start = current;
    if (start.distance().is_zero()) return reject(Rejection::zero_distance, "robots coincide at the start of the period");
    std::array<std::uint64_t, 2> cycles{start.robots[0].cycles_completed, start.robots[1].cycles_completed};

    try {
        for (const Event& e : candidate.period) {
            if (const auto* fm = std::get_if<FinishMove>(&e); fm && !current.rigidity.is_rigid()) {
                const RobotState& r = current.robot(fm->robot);
                if (const auto* mv = r.moving(); mv && r.position != mv->destination)
                    return reject(Rejection::truncated_move, "robot " + std::to_string(fm->robot) + " ends a move short of its destination");
            }
            current = apply_event(current, algorithm, e);
            ++index;
        }
    } catch (const Error& e) {
        return reject(Rejection::illegal_segment, std::string(e.at_event(index).what()));
    }
    const Configuration& end = current;
    if (end.distance().is_zero()) return reject(Rejection::zero_distance, "robots coincide at the end of the period");

    const bool swap = candidate.relabel_period;
    for (RobotId r : {0, 1}) cycles[static_cast<std::size_t>(r)] = end.robot(r).cycles_completed - cycles[static_cast<std::size_t>(r)];
    const bool live0 = !start.robots[0].terminated();
    const bool live1 = !start.robots[1].terminated();
    if (swap) {
        if ((live0 || live1) && cycles[0] + cycles[1] == 0) return reject(Rejection::no_full_cycle, "no robot completes a cycle in the period");
    } else {
        for (RobotId r : {0, 1}) {
            if (!start.robot(r).terminated() && cycles[static_cast<std::size_t>(r)] == 0)
                return reject(Rejection::no_full_cycle, "robot " + std::to_string(r) + " completes no cycle in the period");
        }
    }

    const Scalar& s0 = start.robots[0].position;
    const auto a = normalize(start, algorithm, s0, start.robots[1].position - s0, false);
    const RobotId first = swap ? 1 : 0;
    const Scalar& e0 = end.robot(first).position;
    const auto b = normalize(end, algorithm, e0, end.robot(1 - first).position - e0, swap);
    if (auto diff = compare(a, b, algorithm.palette())) return reject(diff->first, diff->second);

    out.certificate = ScalingCertificate{candidate, end.distance() / start.distance(), swap, start, end};
    return out;
}

std::string format_certificate(const ScalingCertificate& cert)
{
    std::ostringstream out;
    out << "# factor: " << cert.factor.str() << "\n";
    out << "# robots: " << (cert.swapped ? "exchanged" : "identity") << "\n";
    out << "# start distance: " << cert.start.distance().str() << "\n";
    out << format_script(cert.script);
    return out.str();
}

std::string verdict_name(const Verdict& v)
{
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, GathersProven>) return "gathers-proven";
            else if constexpr (std::is_same_v<T, GathersObserved>) return "gathers-observed";
            else if constexpr (std::is_same_v<T, NonGathering>) return "non-gathering";
            else if constexpr (std::is_same_v<T, Defeated>) return "defeated";
            else return "unknown";
        },
        v);
}

// ---------------------------------------------------------------------------
// Explorer

namespace {

struct Edge {
    std::size_t to;
    Event event;
    std::uint8_t completes;  // bit r set if robot r finishes a cycle
};

struct Node {
    Configuration rep;
    std::size_t depth;
    std::size_t parent;
    std::optional<Event> via;
    bool gathered;
    std::vector<Edge> edges;
};

Configuration map_config(const Configuration& c, const Scalar& origin, const Scalar& unit)
{
    Configuration out = c;
    for (auto& r : out.robots) {
        r.position = to_unit(r.position, origin, unit);
        r.cycles_completed = 0;
        if (auto* comp = std::get_if<Computing>(&r.phase)) {
            comp->snapshot.my_position = to_unit(comp->snapshot.my_position, origin, unit);
            comp->snapshot.other_position = to_unit(comp->snapshot.other_position, origin, unit);
        } else if (auto* mv = std::get_if<Moving>(&r.phase)) {
            mv->destination = to_unit(mv->destination, origin, unit);
            // A rigid move always completes, so where it started is irrelevant.
            mv->start = mv->destination;
        }
    }
    return out;
}

// Scale-normalized representative of `c` and its lookup key.
std::pair<Configuration, std::string> canonical(const Configuration& c, const Algorithm& algorithm)
{
    const Scalar origin = c.robots[0].position;
    Scalar unit = c.robots[1].position - origin;
    if (unit.is_zero()) {
        unit = Scalar(1);
        for (const auto& r : c.robots) {
            if (auto p = pending_of(r, algorithm); p && !p->terminate && p->target != origin) {
                unit = p->target - origin;
                break;
            }
        }
    }
    Configuration rep = map_config(c, origin, unit);
    std::string key;
    for (const auto& n : normalize(rep, algorithm, Scalar(0), Scalar(1), false)) {
        key += std::to_string(n.light.index) + ':' + std::to_string(n.tag) + ':' + n.position.str();
        if (n.pending) key += n.pending->terminate ? ":T" : ':' + std::to_string(n.pending->next.index) + ':' + n.pending->target.str();
        key += '|';
    }
    return {std::move(rep), std::move(key)};
}

std::vector<std::pair<Event, std::uint8_t>> choices(const Configuration& c)
{
    std::vector<std::pair<Event, std::uint8_t>> out;
    if (c.model == SchedulerKind::asynch) {
        for (RobotId r : {0, 1}) {
            const RobotState& s = c.robot(r);
            switch (s.phase.index()) {
            case 0: out.emplace_back(Look{r}, 0); break;
            case 1: out.emplace_back(FinishCompute{r}, 0); break;
            case 2:
                if (s.position != s.moving()->destination) out.emplace_back(MoveStep{r, std::nullopt}, 0);
                out.emplace_back(FinishMove{r}, static_cast<std::uint8_t>(1u << r));
                break;
            default: break;
            }
        }
        return out;
    }
    if (c.model == SchedulerKind::ssynch) {
        out.emplace_back(Round{{0}, {}}, 1);
        out.emplace_back(Round{{1}, {}}, 2);
    }
    out.emplace_back(Round{{0, 1}, {}}, 3);
    return out;
}

// Tarjan's algorithm, iterative. Returns component id per node.
std::vector<std::size_t> strongly_connected(const std::vector<Node>& nodes, std::size_t& count)
{
    const std::size_t n = nodes.size();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> work;  // node, next edge
    std::size_t counter = 0;
    count = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unset) continue;
        work.emplace_back(root, 0);
        while (!work.empty()) {
            auto& [v, ei] = work.back();
            if (ei == 0 && index[v] == unset) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            if (ei < nodes[v].edges.size()) {
                const std::size_t w = nodes[v].edges[ei++].to;
                if (index[w] == unset) {
                    work.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                while (true) {
                    const std::size_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = count;
                    if (w == v) break;
                }
                ++count;
            }
            const std::size_t done = v;
            work.pop_back();
            if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
        }
    }
    return comp;
}

struct Lasso {
    std::size_t start;
    std::vector<Event> cycle;
};

// Shortest path from `from` to `to` inside one component, as (node, edge) hops.
std::vector<std::pair<std::size_t, std::size_t>> path_edges(const std::vector<Node>& nodes, const std::vector<std::size_t>& comp, std::size_t from, std::size_t to)
{
    std::vector<std::pair<std::size_t, std::size_t>> prev(nodes.size(), {static_cast<std::size_t>(-1), 0});
    std::vector<char> seen(nodes.size(), 0);
    std::deque<std::size_t> queue{from};
    seen[from] = 1;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        if (v == to) break;
        for (std::size_t i = 0; i < nodes[v].edges.size(); ++i) {
            const std::size_t w = nodes[v].edges[i].to;
            if (seen[w] || comp[w] != comp[from]) continue;
            seen[w] = 1;
            prev[w] = {v, i};
            queue.push_back(w);
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> hops;
    for (std::size_t v = to; v != from; v = prev[v].first) hops.push_back(prev[v]);
    std::reverse(hops.begin(), hops.end());
    return hops;
}

// Breadth-first distances inside one component, along or against edges.
std::vector<std::size_t> distances(const std::vector<std::vector<std::size_t>>& adjacency, const std::vector<std::size_t>& comp, std::size_t source)
{
    std::vector<std::size_t> dist(adjacency.size(), static_cast<std::size_t>(-1));
    std::deque<std::size_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t w : adjacency[v]) {
            if (comp[w] != comp[source] || dist[w] != static_cast<std::size_t>(-1)) continue;
            dist[w] = dist[v] + 1;
            queue.push_back(w);
        }
    }
    return dist;
}

// Shortest fair cycle among non-gathered states: it contains an edge on
// which robot 0 completes a cycle and one on which robot 1 does.
std::optional<Lasso> find_lasso(const std::vector<Node>& nodes)
{
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::size_t count = 0;
    const auto comp = strongly_connected(nodes, count);

    std::vector<std::vector<std::size_t>> forward(nodes.size()), backward(nodes.size());
    std::vector<std::array<std::vector<std::pair<std::size_t, std::size_t>>, 2>> completing(count);
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        if (nodes[v].gathered) continue;
        for (std::size_t i = 0; i < nodes[v].edges.size(); ++i) {
            const Edge& e = nodes[v].edges[i];
            forward[v].push_back(e.to);
            backward[e.to].push_back(v);
            if (comp[e.to] != comp[v]) continue;
            for (int r : {0, 1})
                if ((e.completes >> r) & 1u) completing[comp[v]][static_cast<std::size_t>(r)].emplace_back(v, i);
        }
    }

    struct Best {
        std::size_t length = static_cast<std::size_t>(-1);
        std::pair<std::size_t, std::size_t> e0, e1;
    } best;
    constexpr std::size_t max_candidates = 512;
    for (std::size_t c = 0; c < count; ++c) {
        const auto& c0 = completing[c][0];
        const auto& c1 = completing[c][1];
        if (c0.empty() || c1.empty()) continue;
        for (std::size_t k = 0; k < std::min(c0.size(), max_candidates); ++k) {
            const auto [u0, i0] = c0[k];
            const std::size_t v0 = nodes[u0].edges[i0].to;
            const auto from_v0 = distances(forward, comp, v0);
            if (nodes[u0].edges[i0].completes == 3u && from_v0[u0] + 1 < best.length) best = {from_v0[u0] + 1, c0[k], c0[k]};
            const auto to_u0 = distances(backward, comp, u0);
            for (const auto& [u1, i1] : c1) {
                const std::size_t v1 = nodes[u1].edges[i1].to;
                if (from_v0[u1] == none || to_u0[v1] == none) continue;
                const std::size_t length = from_v0[u1] + to_u0[v1] + 2;
                if (length < best.length) best = {length, c0[k], {u1, i1}};
            }
        }
    }
    if (best.length == none) return std::nullopt;

    const auto [u0, i0] = best.e0;
    const auto [u1, i1] = best.e1;
    const std::size_t v0 = nodes[u0].edges[i0].to;

    // Node sequence around the cycle, starting and ending at v0.
    std::vector<std::size_t> cycle_nodes{v0};
    std::vector<Event> events;
    auto take = [&](std::size_t u, std::size_t i) {
        events.push_back(nodes[u].edges[i].event);
        cycle_nodes.push_back(nodes[u].edges[i].to);
    };
    auto walk = [&](std::size_t from, std::size_t to) {
        for (const auto& [u, i] : path_edges(nodes, comp, from, to)) take(u, i);
    };
    if (best.e0 == best.e1) {
        walk(v0, u0);
        take(u0, i0);
    } else {
        walk(v0, u1);
        take(u1, i1);
        walk(nodes[u1].edges[i1].to, u0);
        take(u0, i0);
    }
    cycle_nodes.pop_back();

    // Rotate so the period starts with the robots apart.
    std::size_t shift = 0;
    while (shift < cycle_nodes.size() && nodes[cycle_nodes[shift]].rep.distance().is_zero()) ++shift;
    if (shift == cycle_nodes.size()) shift = 0;
    std::rotate(events.begin(), events.begin() + static_cast<long>(shift), events.end());
    return Lasso{cycle_nodes[shift], std::move(events)};
}

std::vector<Event> path_from_root(const std::vector<Node>& nodes, std::size_t v)
{
    std::vector<Event> out;
    for (; v != 0; v = nodes[v].parent) out.push_back(*nodes[v].via);
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

Verdict bounded_explore_rigid(const RuleTable& table, std::pair<Color, Color> start_colors, SchedulerKind model, const ExploreLimits& limits)
{
    const Algorithm algorithm(table);
    const Configuration initial = Configuration::initial(model, Rigidity::rigid(), start_colors.first, start_colors.second, Scalar(1));

    std::vector<Node> nodes;
    std::unordered_map<std::string, std::size_t> ids;
    {
        auto [rep, key] = canonical(initial, algorithm);
        ids.emplace(std::move(key), 0);
        nodes.push_back({std::move(rep), 0, 0, std::nullopt, gathered_stable(initial, algorithm), {}});
    }

    auto lasso_verdict = [&](const Lasso& lasso) -> Verdict {
        ScheduleScript script;
        script.prefix = path_from_root(nodes, lasso.start);
        script.period = lasso.cycle;
        auto check = check_certificate(algorithm, initial, script);
        if (!check) return Unknown{nodes[lasso.start].depth, nodes.size(), "cycle rejected: " + std::string(to_string(check.rejection)) + ": " + check.detail};
        return NonGathering{std::move(*check.certificate), nodes.size()};
    };

    std::vector<std::size_t> frontier{0};
    std::size_t depth = 0;
    while (!frontier.empty()) {
        if (depth >= limits.depth) return Unknown{depth, nodes.size(), "depth limit"};
        std::vector<std::size_t> next;
        bool revisit = false;
        for (std::size_t v : frontier) {
            if (nodes[v].gathered) continue;
            for (auto& [event, completes] : choices(nodes[v].rep)) {
                const Configuration succ = apply_event(nodes[v].rep, algorithm, event);
                auto [rep, key] = canonical(succ, algorithm);
                auto [it, fresh] = ids.try_emplace(std::move(key), nodes.size());
                if (fresh) {
                    const bool gathered = gathered_stable(rep, algorithm);
                    nodes.push_back({std::move(rep), depth + 1, v, event, gathered, {}});
                    next.push_back(it->second);
                } else {
                    revisit = true;
                }
                nodes[v].edges.push_back({it->second, event, completes});
            }
            if (nodes.size() > limits.max_states) return Unknown{depth, nodes.size(), "state limit"};
        }
        ++depth;
        if (revisit) {
            if (auto lasso = find_lasso(nodes)) return lasso_verdict(*lasso);
        }
        frontier = std::move(next);
    }
    return GathersProven{depth, nodes.size()};
}

// ---------------------------------------------------------------------------
// Sweep

std::string_view to_string(SweepModel m)
{
    switch (m) {
    case SweepModel::rigid_asynch_arbitrary: return "rigid-asynch-arbitrary";
    case SweepModel::rigid_asynch_preset_aa: return "rigid-asynch-preset-aa";
    case SweepModel::nonrigid_asynch_preset: return "nonrigid-asynch-preset";
    }
    return "?";
}

SweepModel parse_sweep_model(std::string_view text)
{
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return ch == '_' ? '-' : static_cast<char>(std::tolower(ch)); });
    if (t == "rigid-asynch-arbitrary" || t == "arbitrary") return SweepModel::rigid_asynch_arbitrary;
    if (t == "rigid-asynch-preset-aa" || t == "preset-aa") return SweepModel::rigid_asynch_preset_aa;
    if (t == "nonrigid-asynch-preset" || t == "non-rigid-asynch-preset" || t == "nonrigid-preset") return SweepModel::nonrigid_asynch_preset;
    throw Error(ErrorKind::parse, "unknown sweep model '" + std::string(text) + "'");
}

namespace {

ScheduleScript chain(const ScheduleScript& head, const ScheduleScript& tail)
{
    ScheduleScript out = tail;
    out.prefix = head.prefix;
    out.prefix.insert(out.prefix.end(), tail.prefix.begin(), tail.prefix.end());
    return out;
}

std::string plan_name(const Dispatch& d) { return d.plan.id + (d.colors_swapped ? "~swapped" : ""); }

void record_certificate(SweepEntry& entry, const CertificateCheck& check, const std::optional<Scalar>& expected)
{
    if (!check) {
        entry.verdict = "adversary-failed";
        entry.note = std::string(to_string(check.rejection)) + ": " + check.detail;
        return;
    }
    entry.factor = check.certificate->factor;
    if (expected && *expected != check.certificate->factor) {
        entry.verdict = "adversary-failed";
        entry.note = "factor " + check.certificate->factor.str() + " differs from predicted " + expected->str();
        return;
    }
    entry.verdict = "defeated";
}

}  // namespace

SweepEntry sweep_one(const RuleTable& table, SweepModel model, const ExploreLimits& limits)
{
    SweepEntry entry;
    entry.rules = table.describe();
    const Algorithm algorithm(table);
    const Dispatch d = dispatch_two_colors(table);
    const ColorPair aa{Color{0}, Color{0}};

    switch (model) {
    case SweepModel::rigid_asynch_arbitrary: {
        entry.adversary = plan_name(d);
        entry.initial_distance = Scalar(1);
        const auto config = Configuration::initial(SchedulerKind::asynch, Rigidity::rigid(), d.start_colors.first, d.start_colors.second, Scalar(1));
        record_certificate(entry, check_certificate(algorithm, config, d.plan.script), d.plan.expected_factor);
        return entry;
    }
    case SweepModel::rigid_asynch_preset_aa: {
        std::optional<DrivePlan> drive;
        try {
            drive = drive_to_config(table, d.start_colors, Scalar(1), Rigidity::rigid());
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::unreachable_target) throw;
        }
        if (drive) {
            entry.adversary = drive->script.prefix.empty() ? plan_name(d) : "drive+" + plan_name(d);
            entry.initial_distance = drive->initial_distance;
            entry.construction = drive->construction;
            const auto config = Configuration::initial(SchedulerKind::asynch, Rigidity::rigid(), aa.first, aa.second, drive->initial_distance);
            record_certificate(entry, check_certificate(algorithm, config, chain(drive->script, d.plan.script)), d.plan.expected_factor);
            return entry;
        }
        entry.adversary = "explorer";
        const Verdict v = bounded_explore_rigid(table, aa, SchedulerKind::asynch, limits);
        if (const auto* ng = std::get_if<NonGathering>(&v)) {
            entry.verdict = "defeated";
            entry.factor = ng->certificate.factor;
            entry.initial_distance = Scalar(1);
            entry.note = std::to_string(ng->states) + " states";
        } else if (const auto* gp = std::get_if<GathersProven>(&v)) {
            entry.verdict = "survived";
            entry.note = "gathers from A,A: depth " + std::to_string(gp->depth) + ", " + std::to_string(gp->states) + " states";
        } else {
            const auto& u = std::get<Unknown>(v);
            entry.verdict = "unknown";
            entry.note = u.reason + " at depth " + std::to_string(u.depth) + ", " + std::to_string(u.states) + " states";
        }
        return entry;
    }
    case SweepModel::nonrigid_asynch_preset: {
        const Rigidity rigidity = Rigidity::non_rigid(Scalar(1));
        const DrivePlan drive = drive_to_config(table, d.start_colors, Scalar(1), rigidity);
        entry.adversary = "drive+" + plan_name(d);
        entry.initial_distance = drive.initial_distance;
        entry.construction = drive.construction;
        const auto config = Configuration::initial(SchedulerKind::asynch, rigidity, aa.first, aa.second, drive.initial_distance);

        Configuration reached = config;
        for (const Event& e : drive.script.prefix) reached = apply_event(reached, algorithm, e);
        const bool exact = reached.robots[0].waiting() && reached.robots[1].waiting() && reached.robots[0].light == d.start_colors.first &&
                           reached.robots[1].light == d.start_colors.second && reached.distance() == Scalar(1);
        if (!exact) {
            entry.verdict = "adversary-failed";
            entry.note = "drive did not reach the requested configuration";
            return entry;
        }
        record_certificate(entry, check_certificate(algorithm, reached, with_full_moves(d.plan.script)), d.plan.expected_factor);
        return entry;
    }
    }
    return entry;
}

SweepReport sweep_two_colors(const LambdaGrid& grid, SweepModel model, const SweepOptions& options)
{
    const ClassLEnumeration family(2, grid);
    SweepReport report{model, grid.str(), family.count(), std::vector<SweepEntry>(family.count())};

    std::atomic<std::uint64_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            const std::uint64_t i = cursor.fetch_add(1);
            if (i >= family.count()) return;
            try {
                SweepEntry e = sweep_one(family.at(i), model, options.limits);
                e.index = i;
                report.entries[i] = std::move(e);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                cursor = family.count();
            }
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return report;
}

std::vector<std::uint64_t> SweepReport::survivors() const
{
    std::vector<std::uint64_t> out;
    for (const auto& e : entries)
        if (e.verdict != "defeated") out.push_back(e.index);
    return out;
}

std::size_t SweepReport::count(std::string_view verdict) const
{
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [&](const SweepEntry& e) { return e.verdict == verdict; }));
}

bool SweepReport::as_expected() const
{
    if (count("unknown") != 0 || count("adversary-failed") != 0) return false;
    if (model != SweepModel::rigid_asynch_preset_aa) return count("survived") == 0;
    const auto index = ClassLEnumeration(2, LambdaGrid::parse(grid)).index_of(alg1());
    if (!index) return true;
    const auto s = survivors();
    return std::find(s.begin(), s.end(), *index) != s.end();
}

std::string SweepReport::to_json() const
{
    nlohmann::ordered_json j;
    j["model"] = std::string(to_string(model));
    j["grid"] = grid;
    j["total"] = total;
    j["survivors"] = survivors();
    j["as_expected"] = as_expected();
    auto& rows = j["tables"] = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json row;
        row["index"] = e.index;
        row["rules"] = e.rules;
        row["verdict"] = e.verdict;
        row["lemma"] = e.adversary;
        row["factor"] = e.factor ? nlohmann::ordered_json(e.factor->str()) : nlohmann::ordered_json(nullptr);
        if (e.initial_distance) row["initial_distance"] = e.initial_distance->str();
        if (!e.construction.empty()) row["construction"] = e.construction;
        if (!e.note.empty()) row["note"] = e.note;
        rows.push_back(std::move(row));
    }
    return j.dump(1);
}

std::string SweepReport::to_text() const
{
    std::ostringstream out;
    const auto s = survivors();
    out << "model " << to_string(model) << ", grid {" << grid << "}\n";
    out << s.size() << "/" << total << " survive\n";
    std::map<std::string, std::size_t> by_adversary;
    for (const auto& e : entries)
        if (e.verdict == "defeated") {
            std::string name = e.adversary;
            if (auto p = name.find('~'); p != std::string::npos) name.erase(p);
            if (name.starts_with("drive+")) name.erase(0, 6);
            ++by_adversary[name];
        }
    out << "defeats by adversary:";
    for (const auto& [name, n] : by_adversary) out << " " << name << "=" << n;
    out << "\n";
    if (!s.empty()) {
        out << "survivors:\n";
        out << "  index  verdict    rules\n";
        for (auto i : s) {
            const auto& e = entries[i];
            char buf[32];
            std::snprintf(buf, sizeof buf, "  %5llu  %-9s  ", static_cast<unsigned long long>(e.index), e.verdict.c_str());
            out << buf << e.rules;
            if (!e.note.empty()) out << "  (" << e.note << ")";
            out << "\n";
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Trace checks

namespace {

TraceCheck fail(std::string detail) { return TraceCheck{false, std::move(detail)}; }

}  // namespace

TraceCheck check_gathering_bound(const Trace& trace, const Scalar& delta, const Scalar& d0)
{
    const Rigidity& rigidity = trace.initial.rigidity;
    if (rigidity.is_rigid() || rigidity.delta() != delta)
        throw Error(ErrorKind::unsupported_model, "gathering bound needs a non-rigid trace with delta " + delta.str());

    const Configuration& last = trace.final_config();
    if (trace.stop != StopReason::gathered || !last.distance().is_zero()) return fail("not gathered after " + std::to_string(trace.steps.size()) + " events");

    const std::uint64_t budget = static_cast<std::uint64_t>((d0 / delta).ceil()) + kCycleSlack;
    std::array<std::uint64_t, 2> moves{0, 0};
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const Configuration& before = trace.config_before(i);
        const Configuration& after = trace.steps[i].config;
        if (const auto* fm = std::get_if<FinishMove>(&trace.steps[i].event)) {
            const Moving* mv = before.robot(fm->robot).moving();
            if (mv && mv->destination != mv->start) ++moves[static_cast<std::size_t>(fm->robot)];
        } else if (const auto* round = std::get_if<Round>(&trace.steps[i].event)) {
            for (RobotId r : round->active)
                if (before.robot(r).position != after.robot(r).position) ++moves[static_cast<std::size_t>(r)];
            if (after.distance() > before.distance())
                return fail("distance grew from " + before.distance().str() + " to " + after.distance().str() + " at event " + std::to_string(i));
        }
    }
    for (RobotId r : {0, 1})
        if (moves[static_cast<std::size_t>(r)] > budget)
            return fail("robot " + std::to_string(r) + " made " + std::to_string(moves[static_cast<std::size_t>(r)]) + " moves, budget " +
                        std::to_string(budget));
    return {true, "moves " + std::to_string(moves[0]) + "/" + std::to_string(moves[1]) + " within " + std::to_string(budget)};
}

TraceCheck check_super_round_decrease(const Trace& trace, const Scalar& delta)
{
    std::map<Color, Scalar> last;
    std::size_t rounds = 0;
    for (std::size_t i = 0; i <= trace.steps.size(); ++i) {
        const Configuration& c = trace.config_before(i);
        if (!c.robots[0].waiting() || !c.robots[1].waiting() || c.robots[0].light != c.robots[1].light) continue;
        const Scalar d = c.distance();
        if (auto it = last.find(c.robots[0].light); it != last.end()) {
            if (!d.is_zero() && d > it->second - Scalar(2) * delta)
                return fail("distance " + it->second.str() + " -> " + d.str() + " across a same-color round ending at event " + std::to_string(i));
            ++rounds;
        }
        last[c.robots[0].light] = d;
    }
    return {true, std::to_string(rounds) + " same-color rounds"};
}

TraceCheck check_color_stability(const Trace& trace, const Algorithm& algorithm)
{
    for (std::size_t i = 0; i <= trace.steps.size(); ++i) {
        const Configuration& c = trace.config_before(i);
        if (c.robots[0].light == c.robots[1].light) continue;
        bool settled = true;
        for (const auto& r : c.robots) {
            if (std::holds_alternative<Computing>(r.phase)) {
                auto p = pending_of(r, algorithm);
                if (p->terminate || p->next != r.light) settled = false;
            }
        }
        if (!settled) continue;
        for (std::size_t j = i + 1; j <= trace.steps.size(); ++j) {
            const Configuration& later = trace.config_before(j);
            if (later.robots[0].light != c.robots[0].light || later.robots[1].light != c.robots[1].light)
                return fail("lights settled at event " + std::to_string(i) + " but changed at event " + std::to_string(j));
        }
        return {true, "lights settled from event " + std::to_string(i)};
    }
    return {true, "lights never settled apart"};
}

TraceCheck check_termination(const Trace& trace)
{
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const Configuration& before = trace.config_before(i);
        const Configuration& after = trace.steps[i].config;
        for (RobotId r : {0, 1}) {
            if (before.robot(r).terminated() && after.robot(r).position != before.robot(r).position)
                return fail("terminated robot " + std::to_string(r) + " moved at event " + std::to_string(i));
            if (!before.robot(r).terminated() && after.robot(r).terminated() && !after.distance().is_zero())
                return fail("robot " + std::to_string(r) + " terminated at distance " + after.distance().str() + " at event " + std::to_string(i));
        }
    }
    const Configuration& last = trace.final_config();
    if (!both_terminated(last)) return fail("robots did not both terminate");
    if (!last.distance().is_zero()) return fail("terminated apart");
    return {true, "terminated together after " + std::to_string(trace.steps.size()) + " events"};
}

TraceCheck check_stationary_color(const Trace& trace, Color color)
{
    for (std::size_t i = 0; i <= trace.steps.size(); ++i) {
        const Configuration& c = trace.config_before(i);
        for (const auto& r : c.robots) {
            if (r.light != color) continue;
            if (const auto* mv = r.moving(); mv && (mv->destination != mv->start || r.position != mv->start))
                return fail("robot " + std::to_string(r.id) + " has a real move while lit with the stationary color at event " + std::to_string(i));
            if (i > 0 && trace.config_before(i - 1).robot(r.id).position != r.position)
                return fail("robot " + std::to_string(r.id) + " moved while lit with the stationary color at event " + std::to_string(i - 1));
        }
    }
    return {true, {}};
}

}  // namespace rendezvous
