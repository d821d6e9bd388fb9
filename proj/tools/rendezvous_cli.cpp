/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#include "rendezvous/adversaries.hpp"
#include "rendezvous/algorithms.hpp"
#include "rendezvous/checking.hpp"
#include "rendezvous/reproduce.hpp"
#include "rendezvous/trace_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace rendezvous;

namespace {

enum Exit { ok = 0, invalid = 1, non_gathering = 2, undecided = 3 };

int log_level()
{
    const char* env = std::getenv("RENDEZVOUS_LOG");
    if (env == nullptr) return 0;
    const std::string v(env);
    if (v == "debug" || v == "2") return 2;
    if (v == "info" || v == "1") return 1;
    return 0;
}

void log(int level, const std::string& message)
{
    if (log_level() >= level) std::cerr << "rendezvous: " << message << "\n";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ColorPair parse_colors(const Palette& palette, const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::parse, "expected colors as X,Y");
    return {palette.parse(text.substr(0, comma)), palette.parse(text.substr(comma + 1))};
}

void write_trace(const std::string& path, const Trace& trace, const Palette& palette)
{
    if (path.empty()) return;
    if (path == "-") {
        write_trace_jsonl(std::cout, trace, palette);
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::parse, "cannot write '" + path + "'");
    write_trace_jsonl(out, trace, palette);
}

// ---------------------------------------------------------------------------

struct RunArgs {
    std::string algorithm;
    std::string model = "asynch";
    bool rigid = false;
    std::string nonrigid;
    std::string colors;
    std::string distance = "1";
    std::string schedule;
    std::size_t budget = 10'000;
    std::size_t window = 8;
    std::string truncation = "uniform";
    std::string output;
    std::size_t periods = 3;
    std::string certificate;
};

int report_run(const Trace& trace, const Algorithm& algorithm, const std::string& output)
{
    write_trace(output, trace, algorithm.palette());
    const Configuration& last = trace.final_config();
    std::cout << "stop: " << to_string(trace.stop) << " after " << trace.steps.size() << " events\n";
    std::cout << "distance: " << last.distance().str() << "\n";
    if (trace.stop == StopReason::gathered) {
        std::cout << "verdict: gathers-observed\n";
        return ok;
    }
    if (trace.stop == StopReason::terminated) {
        const auto check = check_termination(trace);
        std::cout << "verdict: terminated" << (check ? "" : " (" + check.detail + ")") << "\n";
        return check ? ok : invalid;
    }
    std::cout << "verdict: unknown\n";
    return undecided;
}

int certified(const Algorithm& algorithm, const Configuration& config, const ScalingCertificate& cert, const std::string& name, const RunArgs& args)
{
    std::cout << "verdict: non-gathering\n";
    if (!name.empty()) std::cout << "adversary: " << name << "\n";
    std::cout << "factor: " << cert.factor.str() << "\n";
    std::cout << "robots: " << (cert.swapped ? "exchanged" : "identity") << " per period\n";
    std::cout << "start distance: " << cert.start.distance().str() << "\n";
    if (!args.output.empty()) {
        RunOptions options;
        options.early_stop = false;
        options.budget = cert.script.prefix.size() + args.periods * cert.script.period.size();
        Trace trace = run_schedule(config, algorithm, cert.script, options);
        trace.metadata.schedule = args.schedule;
        write_trace(args.output, trace, algorithm.palette());
    }
    if (!args.certificate.empty()) {
        std::ofstream out(args.certificate);
        if (!out) throw Error(ErrorKind::parse, "cannot write '" + args.certificate + "'");
        out << format_certificate(cert);
    }
    return non_gathering;
}

int cmd_run(const RunArgs& args)
{
    const Algorithm algorithm = resolve_algorithm(args.algorithm);
    const SchedulerKind model = parse_scheduler_kind(args.model);
    if (args.rigid && !args.nonrigid.empty()) throw Error(ErrorKind::parse, "--rigid and --nonrigid are exclusive");
    const Rigidity rigidity = args.nonrigid.empty() ? Rigidity::rigid() : Rigidity::non_rigid(Scalar::parse(args.nonrigid));
    const Scalar distance = Scalar::parse(args.distance);
    if (distance.sign() < 0) throw Error(ErrorKind::parse, "distance must be non-negative");

    std::optional<ColorPair> colors;
    if (!args.colors.empty()) colors = parse_colors(algorithm.palette(), args.colors);
    RunOptions options;
    options.budget = args.budget;

    if (args.schedule.starts_with("random:")) {
        const std::uint64_t seed = std::stoull(args.schedule.substr(7));
        const ColorPair c = colors.value_or(ColorPair{Color{0}, Color{0}});
        const auto config = Configuration::initial(model, rigidity, c.first, c.second, distance);
        log(1, "random fair run, seed " + std::to_string(seed));
        const Trace trace = run_random_fair(algorithm, config, seed, {args.window}, parse_truncation_policy(args.truncation), options);
        return report_run(trace, algorithm, args.output);
    }

    ScheduleScript script;
    std::string name;
    ColorPair start{Color{0}, Color{0}};
    if (args.schedule.starts_with("adversary:")) {
        if (!algorithm.is_class_l()) throw Error(ErrorKind::unsupported_model, "adversaries need a class-L table");
        name = args.schedule.substr(10);
        const AdversaryPlan plan = named_plan(name, algorithm.rule_table(), colors.value_or(ColorPair{Color{0}, Color{0}}));
        if (plan.model != model) log(1, "adversary " + plan.id + " is built for " + std::string(to_string(plan.model)));
        script = rigidity.is_rigid() ? plan.script : with_full_moves(plan.script);
        start = colors.value_or(plan.start_colors);
        if (plan.expected_factor) log(1, "predicted factor " + plan.expected_factor->str());
    } else if (!args.schedule.empty()) {
        script = parse_script(read_file(args.schedule));
        start = colors.value_or(start);
    } else {
        throw Error(ErrorKind::parse, "--schedule is required");
    }

    const auto config = Configuration::initial(model, rigidity, start.first, start.second, distance);
    if (script.periodic()) {
        const auto check = check_certificate(algorithm, config, script);
        if (check) return certified(algorithm, config, *check.certificate, name, args);
        log(1, "no certificate: " + std::string(to_string(check.rejection)) + ": " + check.detail);
    }
    Trace trace = run_schedule(config, algorithm, script, options);
    trace.metadata.schedule = args.schedule;
    if (log_level() >= 2)
        for (const auto& s : trace.steps) log(2, format_event(s.event) + " -> distance " + s.config.distance().str());
    return report_run(trace, algorithm, args.output);
}

struct SweepArgs {
    std::string grid = "0,1/2,1";
    std::string model = "rigid-asynch-arbitrary";
    std::size_t jobs = 1;
    std::size_t depth = 200;
    std::string output;
};

int cmd_sweep(const SweepArgs& args)
{
    const LambdaGrid grid = LambdaGrid::parse(args.grid);
    const SweepModel model = parse_sweep_model(args.model);
    SweepOptions options;
    options.jobs = args.jobs;
    options.limits.depth = args.depth;
    const SweepReport report = sweep_two_colors(grid, model, options);
    std::cout << report.to_text();
    if (!args.output.empty()) {
        std::ofstream out(args.output);
        if (!out) throw Error(ErrorKind::parse, "cannot write '" + args.output + "'");
        out << report.to_json() << "\n";
    }
    return report.as_expected() ? ok : non_gathering;
}

int cmd_adversary(const std::string& name, const std::string& lambda, const std::string& which)
{
    std::cout << format_script(named_script(name, Scalar::parse(lambda), which));
    return ok;
}

int cmd_reproduce(const std::optional<std::string>& cell, const std::string& alg1_file, std::size_t seeds, std::size_t jobs)
{
    ReproduceOptions options;
    options.cell = cell;
    options.seeds = seeds;
    options.jobs = jobs;
    if (!alg1_file.empty()) {
        const Algorithm a = parse_table(read_file(alg1_file), alg1_file);
        if (!a.is_class_l()) throw Error(ErrorKind::parse, "replacement table must be class L");
        options.alg1_table = a.rule_table();
    }
    const auto cells = reproduce(options);
    std::cout << format_reproduction(cells);
    std::vector<std::string> failed;
    for (const auto& c : cells)
        if (!c.passed()) failed.push_back(c.id);
    if (failed.empty()) return ok;
    std::cout << "failed cells:";
    for (const auto& f : failed) std::cout << " " << f;
    std::cout << "\n";
    return non_gathering;
}

int cmd_plotdata(const std::string& path, const std::string& output)
{
    std::vector<TraceRecord> records;
    if (path == "-") {
        records = read_trace_jsonl(std::cin);
    } else {
        std::ifstream in(path);
        if (!in) throw Error(ErrorKind::parse, "cannot read '" + path + "'");
        records = read_trace_jsonl(in);
    }
    if (output.empty()) {
        write_plotdata(std::cout, records);
    } else {
        std::ofstream out(output);
        if (!out) throw Error(ErrorKind::parse, "cannot write '" + output + "'");
        write_plotdata(out, records);
    }
    return ok;
}

int cmd_show(const std::string& name)
{
    const Algorithm a = resolve_algorithm(name);
    std::cout << "# " << a.name() << " " << algorithm_hash(a) << "\n" << format_table(a);
    return ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-robot rendezvous with lights: simulator, adversaries and checker"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Simulate one algorithm under a schedule");
    run_cmd->add_option("algorithm", run.algorithm, "alg1, alg2, alg3, one-color, enum:<k>:<grid>:<index> or a table file")->required();
    run_cmd->add_option("--model", run.model, "fsynch, ssynch or asynch");
    run_cmd->add_flag("--rigid", run.rigid, "Moves always reach their destination (default)");
    run_cmd->add_option("--nonrigid", run.nonrigid, "Non-rigid moves with minimum progress DELTA");
    run_cmd->add_option("--colors", run.colors, "Start colors, e.g. A,B");
    run_cmd->add_option("--distance", run.distance, "Start distance (rational)");
    run_cmd->add_option("--schedule", run.schedule, "Script file, adversary:<name> or random:<seed>")->required();
    run_cmd->add_option("--budget", run.budget, "Event budget");
    run_cmd->add_option("--window", run.window, "Fairness window for random schedules");
    run_cmd->add_option("--truncation", run.truncation, "always_full, always_delta or uniform");
    run_cmd->add_option("--output", run.output, "Write the JSON-Lines trace here ('-' for stdout)");
    run_cmd->add_option("--periods", run.periods, "Periods to record for certified schedules");
    run_cmd->add_option("--certificate", run.certificate, "Write the certificate here");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run every two-color table on a grid against its adversary");
    sweep_cmd->add_option("--grid", sweep.grid, "Comma-separated lambda values");
    sweep_cmd->add_option("--model", sweep.model, "rigid-asynch-arbitrary, rigid-asynch-preset-aa or nonrigid-asynch-preset");
    sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads");
    sweep_cmd->add_option("--depth", sweep.depth, "Explorer depth limit");
    sweep_cmd->add_option("--output", sweep.output, "Write the JSON report here");

    std::string adv_name, adv_lambda = "0", adv_case;
    auto* adv_cmd = app.add_subcommand("adversary", "Print an adversary schedule");
    adv_cmd->add_option("name", adv_name, "lemma13, prop12, lemma16, lemma17, lemma18, lemma19 or lemma23")->required();
    adv_cmd->add_option("--lambda", adv_lambda, "Move parameter of the matched rule");
    adv_cmd->add_option("--case", adv_case, "lemma16: general|lambda_eq_1; lemma18: to_B_not1|to_B_1|stays_A");

    std::optional<std::string> rep_cell;
    std::string rep_table;
    std::size_t rep_seeds = 20, rep_jobs = 1;
    auto* rep_cmd = app.add_subcommand("reproduce", "Re-run the evidence behind the color-count table");
    rep_cmd->add_option("--cell", rep_cell, "Only this cell");
    rep_cmd->add_option("--alg1-table", rep_table, "Use this two-color table in place of the built-in one");
    rep_cmd->add_option("--seeds", rep_seeds, "Random seeds per start");
    rep_cmd->add_option("--jobs", rep_jobs, "Worker threads for sweeps");

    std::string plot_in, plot_out;
    auto* plot_cmd = app.add_subcommand("plotdata", "Convert a JSON-Lines trace to CSV");
    plot_cmd->add_option("trace", plot_in, "Trace file ('-' for stdin)")->required();
    plot_cmd->add_option("--output", plot_out, "CSV file");

    std::string show_name;
    auto* show_cmd = app.add_subcommand("show", "Print a table in file format");
    show_cmd->add_option("algorithm", show_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return invalid;
    }

    try {
        if (*run_cmd) return cmd_run(run);
        if (*sweep_cmd) return cmd_sweep(sweep);
        if (*adv_cmd) return cmd_adversary(adv_name, adv_lambda, adv_case);
        if (*rep_cmd) return cmd_reproduce(rep_cell, rep_table, rep_seeds, rep_jobs);
        if (*plot_cmd) return cmd_plotdata(plot_in, plot_out);
        if (*show_cmd) return cmd_show(show_name);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return invalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return invalid;
    }
    return invalid;
}
