/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#include "rendezvous/reproduce.hpp"

#include "rendezvous/adversaries.hpp"
#include "rendezvous/algorithms.hpp"
#include "rendezvous/checking.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace rendezvous {

namespace {

struct CellPlan {
    const char* id;
    int colors;
    std::vector<const char*> evidence;
};

const std::vector<CellPlan>& cell_plans()
{
    static const std::vector<CellPlan> plans{
        {"fsynch-rigid-preset", 1, {"one-color-fsynch-rigid"}},
        {"fsynch-nonrigid-preset", 1, {"one-color-fsynch-nonrigid"}},
        {"ssynch-rigid-preset", 2, {"alg1-ssynch-rigid-explored", "one-color-ssynch-defeated"}},
        {"ssynch-nonrigid-preset", 2, {"alg1-ssynch-nonrigid-runs", "one-color-ssynch-defeated"}},
        {"asynch-rigid-preset", 2, {"alg1-asynch-rigid-explored", "one-color-ssynch-defeated"}},
        {"asynch-nonrigid-preset", 3, {"alg3-asynch-nonrigid-runs", "two-color-nonrigid-preset-sweep"}},
        {"fsynch-arbitrary", 1, {"one-color-fsynch-rigid", "one-color-fsynch-nonrigid"}},
        {"ssynch-arbitrary", 2, {"alg1-ssynch-rigid-explored", "alg1-ssynch-nonrigid-runs", "one-color-ssynch-defeated"}},
        {"asynch-arbitrary", 3, {"alg3-asynch-nonrigid-runs", "two-color-rigid-arbitrary-sweep"}},
    };
    return plans;
}

const Color A{0};

std::vector<ColorPair> all_pairs(std::size_t k)
{
    std::vector<ColorPair> out;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) out.emplace_back(Color{static_cast<std::uint8_t>(i)}, Color{static_cast<std::uint8_t>(j)});
    return out;
}

std::string pair_name(const Palette& p, ColorPair c) { return p.name(c.first) + "," + p.name(c.second); }

class EvidenceRunner {
public:
    explicit EvidenceRunner(const ReproduceOptions& options) : options_(options), alg1_(options.alg1_table.value_or(alg1())) {}

    Evidence get(const std::string& id)
    {
        if (auto it = cache_.find(id); it != cache_.end()) return it->second;
        Evidence e = run(id);
        cache_.emplace(id, e);
        return e;
    }

private:
    Evidence run(const std::string& id)
    {
        Evidence e{id, {}, true, {}};
        auto fail = [&](std::string why) {
            if (e.passed) e.detail = std::move(why);
            e.passed = false;
        };
        try {
            if (id == "one-color-fsynch-rigid") {
                e.claim = "one-color midpoint gathers in one rigid FSYNCH round";
                for (const Scalar& d : {Scalar(1), Scalar(10), Scalar(7, 3)}) {
                    const auto config = Configuration::initial(SchedulerKind::fsynch, Rigidity::rigid(), A, A, d);
                    const Trace t = run_random_fair(one_color_midpoint(), config, 1);
                    if (t.stop != StopReason::gathered || t.steps.size() != 1) fail("distance " + d.str() + " took " + std::to_string(t.steps.size()) + " rounds");
                }
                if (e.passed) e.detail = "3 distances, 1 round each";
            } else if (id == "one-color-fsynch-nonrigid") {
                e.claim = "one-color midpoint gathers in non-rigid FSYNCH within the move budget";
                run_seeds(e, one_color_midpoint(), SchedulerKind::fsynch, {{A, A}}, fail);
            } else if (id == "one-color-ssynch-defeated") {
                e.claim = "every one-color table on {0,1/2,1} is defeated in rigid SSYNCH";
                std::vector<std::string> factors;
                for (const RuleTable& t : ClassLEnumeration(1, LambdaGrid::standard())) {
                    const AdversaryPlan plan = symmetric_fsynch(t, {A, A});
                    const auto config = Configuration::initial(SchedulerKind::ssynch, Rigidity::rigid(), A, A, Scalar(1));
                    const auto check = check_certificate(t, config, plan.script);
                    if (!check) fail(t.describe() + " not defeated: " + check.detail);
                    else factors.push_back(check.certificate->factor.str());
                }
                if (e.passed) e.detail = "factors " + join(factors);
            } else if (id == "alg1-ssynch-rigid-explored") {
                e.claim = "two-color table gathers in rigid SSYNCH from every start (exhaustive)";
                explore_all(e, SchedulerKind::ssynch, all_pairs(2), fail);
            } else if (id == "alg1-asynch-rigid-explored") {
                e.claim = "two-color table gathers in rigid ASYNCH from A,A (exhaustive)";
                explore_all(e, SchedulerKind::asynch, {{A, A}}, fail);
            } else if (id == "alg1-ssynch-nonrigid-runs") {
                e.claim = "two-color table gathers in non-rigid SSYNCH from every start within the move budget";
                run_seeds(e, alg1_, SchedulerKind::ssynch, all_pairs(2), fail);
                const Rigidity rigidity = Rigidity::non_rigid(Scalar(1));
                for (const auto& start : all_pairs(2)) {
                    for (bool exception : {false, true}) {
                        const AdversaryPlan plan = alternating_ssynch(alg1_, start, exception);
                        const auto config = Configuration::initial(SchedulerKind::ssynch, rigidity, start.first, start.second, Scalar(10));
                        const Trace t = run_schedule(config, alg1_, plan.script);
                        if (!check_gathering_bound(t, Scalar(1), Scalar(10))) fail(plan.id + " from " + pair_name(alg1_.palette(), start) + " not gathered");
                    }
                }
            } else if (id == "alg3-asynch-nonrigid-runs") {
                e.claim = "three-color table gathers in non-rigid ASYNCH from every start within the move budget";
                run_seeds(e, alg3(), SchedulerKind::asynch, all_pairs(3), fail);
            } else if (id == "two-color-nonrigid-preset-sweep" || id == "two-color-rigid-arbitrary-sweep") {
                const bool preset = id == "two-color-nonrigid-preset-sweep";
                e.claim = preset ? "no two-color table on {0,1/2,1} survives non-rigid ASYNCH from A,A"
                                 : "no two-color table on {0,1/2,1} survives rigid ASYNCH from arbitrary starts";
                const SweepReport r = sweep_two_colors(LambdaGrid::standard(), preset ? SweepModel::nonrigid_asynch_preset : SweepModel::rigid_asynch_arbitrary,
                                                       {options_.jobs, {}});
                const std::size_t survivors = r.survivors().size();
                if (!r.as_expected()) fail(std::to_string(survivors) + "/" + std::to_string(r.total) + " survive");
                else e.detail = "0/" + std::to_string(r.total) + " survive";
            } else {
                throw Error(ErrorKind::parse, "unknown evidence '" + id + "'");
            }
        } catch (const Error& err) {
            fail(err.what());
        }
        return e;
    }

    template <typename Fail>
    void run_seeds(Evidence& e, const Algorithm& algorithm, SchedulerKind model, const std::vector<ColorPair>& starts, Fail&& fail)
    {
        const Scalar delta(1);
        const Scalar d0(10);
        std::size_t runs = 0;
        for (const auto& start : starts) {
            for (std::uint64_t seed = 1; seed <= options_.seeds; ++seed) {
                const auto config = Configuration::initial(model, Rigidity::non_rigid(delta), start.first, start.second, d0);
                const Trace t = run_random_fair(algorithm, config, seed);
                if (auto check = check_gathering_bound(t, delta, d0); !check)
                    fail("seed " + std::to_string(seed) + " from " + pair_name(algorithm.palette(), start) + ": " + check.detail);
                ++runs;
            }
        }
        if (e.passed) e.detail = std::to_string(runs) + " seeded runs gathered";
    }

    template <typename Fail>
    void explore_all(Evidence& e, SchedulerKind model, const std::vector<ColorPair>& starts, Fail&& fail)
    {
        std::vector<std::string> depths;
        for (const auto& start : starts) {
            const Verdict v = bounded_explore_rigid(alg1_, start, model);
            if (const auto* g = std::get_if<GathersProven>(&v)) depths.push_back(std::to_string(g->depth));
            else fail("from " + pair_name(alg1_.palette(), start) + ": " + verdict_name(v));
        }
        if (e.passed) e.detail = "proven at depth " + join(depths);
    }

    static std::string join(const std::vector<std::string>& items)
    {
        std::string out;
        for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
        return out;
    }

    const ReproduceOptions& options_;
    RuleTable alg1_;
    std::map<std::string, Evidence> cache_;
};

}  // namespace

bool Cell::passed() const
{
    return std::all_of(evidence.begin(), evidence.end(), [](const Evidence& e) { return e.passed; });
}

const std::vector<std::string>& cell_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& s : cell_plans()) out.emplace_back(s.id);
        return out;
    }();
    return ids;
}

std::vector<Cell> reproduce(const ReproduceOptions& options)
{
    if (options.cell && std::find(cell_ids().begin(), cell_ids().end(), *options.cell) == cell_ids().end())
        throw Error(ErrorKind::parse, "unknown cell '" + *options.cell + "'");
    if (options.alg1_table && options.alg1_table->palette().size() != 2) throw Error(ErrorKind::palette, "replacement table must use two colors");

    EvidenceRunner runner(options);
    std::vector<Cell> cells;
    for (const auto& plan : cell_plans()) {
        if (options.cell && *options.cell != plan.id) continue;
        Cell cell{plan.id, plan.colors, {}};
        for (const char* id : plan.evidence) cell.evidence.push_back(runner.get(id));
        cells.push_back(std::move(cell));
    }
    return cells;
}

std::string format_reproduction(const std::vector<Cell>& cells)
{
    std::map<std::string, const Cell*> by_id;
    for (const auto& c : cells) by_id[c.id] = &c;
    auto value = [&](const std::string& id) -> std::string {
        auto it = by_id.find(id);
        if (it == by_id.end()) return "-";
        return std::to_string(it->second->colors) + (it->second->passed() ? "" : "!");
    };

    std::ostringstream out;
    char buf[160];
    out << "minimum colors, class-L rendezvous\n";
    std::snprintf(buf, sizeof buf, "%-34s %7s %7s %7s\n", "", "FSYNCH", "SSYNCH", "ASYNCH");
    out << buf;
    const struct {
        const char* label;
        const char* f;
        const char* s;
        const char* a;
    } rows[] = {
        {"preset start, rigid", "fsynch-rigid-preset", "ssynch-rigid-preset", "asynch-rigid-preset"},
        {"preset start, non-rigid", "fsynch-nonrigid-preset", "ssynch-nonrigid-preset", "asynch-nonrigid-preset"},
        {"arbitrary start, rigid/non-rigid", "fsynch-arbitrary", "ssynch-arbitrary", "asynch-arbitrary"},
    };
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-34s %7s %7s %7s\n", r.label, value(r.f).c_str(), value(r.s).c_str(), value(r.a).c_str());
        out << buf;
    }
    out << "\n";
    for (const auto& c : cells) {
        out << c.id << ": " << c.colors << " colors, " << (c.passed() ? "ok" : "FAILED") << "\n";
        for (const auto& e : c.evidence) out << "  [" << (e.passed ? "pass" : "fail") << "] " << e.id << ": " << e.claim << " (" << e.detail << ")\n";
    }
    return out.str();
}

}  // namespace rendezvous
