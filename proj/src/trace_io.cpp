/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#include "rendezvous/trace_io.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>

namespace rendezvous {

namespace {

using nlohmann::ordered_json;

ordered_json robots_json(const Configuration& c, const Palette& palette)
{
    ordered_json robots = ordered_json::array();
    for (const auto& r : c.robots) {
        ordered_json j;
        j["id"] = r.id;
        j["pos"] = r.position.str();
        j["light"] = palette.name(r.light);
        j["phase"] = std::string(phase_name(r.phase));
        if (const auto* mv = r.moving()) j["dest"] = mv->destination.str();
        robots.push_back(std::move(j));
    }
    return robots;
}

ordered_json line(std::size_t index, const std::string& event, const Configuration& c, const Palette& palette)
{
    ordered_json j;
    j["index"] = index;
    j["event"] = event;
    j["robots"] = robots_json(c, palette);
    j["distance"] = c.distance().str();
    return j;
}

}  // namespace

void write_trace_jsonl(std::ostream& out, const Trace& trace, const Palette& palette)
{
    ordered_json init = line(0, "init", trace.initial, palette);
    ordered_json meta;
    meta["algorithm"] = trace.metadata.algorithm;
    meta["algorithm_hash"] = trace.metadata.algorithm_hash;
    meta["model"] = std::string(to_string(trace.initial.model));
    meta["rigidity"] = trace.initial.rigidity.str();
    meta["schedule"] = trace.metadata.schedule;
    meta["seed"] = trace.metadata.seed ? ordered_json(*trace.metadata.seed) : ordered_json(nullptr);
    meta["stop"] = std::string(to_string(trace.stop));
    init["meta"] = std::move(meta);
    out << init.dump() << '\n';
    for (std::size_t i = 0; i < trace.steps.size(); ++i)
        out << line(i + 1, format_event(trace.steps[i].event), trace.steps[i].config, palette).dump() << '\n';
}

std::vector<TraceRecord> read_trace_jsonl(std::istream& in)
{
    std::vector<TraceRecord> out;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = nlohmann::json::parse(text);
            TraceRecord rec;
            rec.index = j.at("index").get<std::size_t>();
            rec.event = j.at("event").get<std::string>();
            rec.distance = j.at("distance").get<std::string>();
            (void)Scalar::parse(rec.distance);
            const auto& robots = j.at("robots");
            if (!robots.is_array() || robots.size() != 2) throw Error(ErrorKind::parse, "expected two robots");
            for (std::size_t r = 0; r < 2; ++r) {
                rec.light[r] = robots[r].at("light").get<std::string>();
                rec.phase[r] = robots[r].at("phase").get<std::string>();
            }
            out.push_back(std::move(rec));
        } catch (const Error& e) {
            throw Error(ErrorKind::parse, "trace line " + std::to_string(line_no) + ": " + e.what());
        } catch (const std::exception& e) {
            throw Error(ErrorKind::parse, "trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

void write_plotdata(std::ostream& out, const std::vector<TraceRecord>& records)
{
    out << "event_index,distance,light0,light1,phase0,phase1\n";
    for (const auto& r : records)
        out << r.index << ',' << r.distance << ',' << r.light[0] << ',' << r.light[1] << ',' << r.phase[0] << ',' << r.phase[1] << '\n';
}

}  // namespace rendezvous
