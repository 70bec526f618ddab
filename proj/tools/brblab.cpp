// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
//
// brblab: reliable-broadcast protocol laboratory.
//   run <scenario.json>      simulate one scenario, check it, emit trace + verdict
//   table [suite.json]       measure good/bad-case rounds against claimed constants
//   explore <protocol>       enumerate the bounded adversary family
//   gen <generator>          print a generated scenario family as JSON
#include "brblab/checkers.hpp"
#include "brblab/explore.hpp"
#include "brblab/scenario_gen.hpp"
#include "brblab/simulator.hpp"
#include "brblab/table.hpp"
#include "brblab/trace_io.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;
using namespace brblab;

constexpr int kExitCheckFailure = 1;
constexpr int kExitBadInput = 2;

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir, std::uint64_t seed)
{
    Scenario sc = load_scenario(read_file(scenario_path));
    if (seed != 0) sc.seed = seed;
    const Trace trace = simulate(sc);
    const Verdict v = check_trace(sc.protocol, trace);

    if (!out_dir.empty()) {
        const std::string stem = sc.name.empty() ? "scenario" : sc.name;
        write_file(fs::path(out_dir) / (stem + ".trace.jsonl"), trace_to_jsonl(trace));
        write_file(fs::path(out_dir) / (stem + ".verdict.json"), verdict_to_json(v));
    }
    std::cout << verdict_to_json(v) << "\n";

    const bool checks_ok = v.agreement != CheckStatus::Fail &&
                           v.validity != CheckStatus::Fail &&
                           v.termination != CheckStatus::Fail && !v.truncated;
    if (sc.expect_violation) return v.any_violation() ? 0 : kExitCheckFailure;
    return checks_ok ? 0 : kExitCheckFailure;
}

int cmd_table(const std::string& suite_path, const std::string& csv_path)
{
    const std::string suite =
        suite_path.empty() ? default_suite_json() : read_file(suite_path);
    const TableReport rep = run_table(suite);
    const std::string csv = table_to_csv(rep);
    if (!csv_path.empty()) write_file(csv_path, csv);
    std::cout << csv;
    return rep.all_ok() ? 0 : kExitCheckFailure;
}

int cmd_explore(const std::string& protocol, int n, int f, std::uint64_t max_executions,
                int variants, std::uint64_t seed, bool lemmas, const std::string& out_path)
{
    ExploreBounds bounds;
    bounds.max_executions = max_executions;
    bounds.sched_variants = variants;
    bounds.sched_seed = seed;
    bounds.lemma_checks = lemmas;
    const ExplorationReport rep = explore(parse_protocol(protocol), n, f, bounds);
    const std::string text = report_to_json(rep);
    if (!out_path.empty()) write_file(out_path, text);
    std::cout << text << "\n";
    return rep.clean() ? 0 : kExitCheckFailure;
}

int cmd_gen(const std::string& name, const std::string& protocol, int n, int f,
            const std::string& out_dir)
{
    std::vector<Scenario> scenarios;
    if (name == "good") {
        scenarios.push_back(good_case_scenario(parse_protocol(protocol), n, f));
    } else if (name == "badcase") {
        scenarios.push_back(badcase_scenario(parse_protocol(protocol), n, f));
    } else if (name == "thm2") {
        scenarios = thm2_scenario(f);
    } else if (name == "thm3_chain") {
        scenarios = thm3_chain(n, parse_protocol(protocol));
    } else {
        throw std::invalid_argument("unknown generator: " + name);
    }
    for (const auto& sc : scenarios) {
        const std::string text = scenario_to_json(sc);
        if (out_dir.empty()) {
            std::cout << text << "\n";
        } else {
            write_file(fs::path(out_dir) / (sc.name + ".json"), text);
            std::cout << (fs::path(out_dir) / (sc.name + ".json")).string() << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"brblab: Byzantine reliable-broadcast laboratory"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "override the scenario seed");

    auto* run = app.add_subcommand("run", "simulate and check one scenario file");
    std::string scenario_path, out_dir;
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "directory for trace + verdict output");

    auto* table = app.add_subcommand("table", "good/bad-case round summary");
    std::string suite_path, csv_path;
    table->add_option("suite", suite_path, "suite JSON file (default: built-in)");
    table->add_option("--csv", csv_path, "write the CSV here as well");

    auto* explore_cmd = app.add_subcommand("explore", "enumerate the adversary family");
    std::string protocol;
    int n = 4, f = 1, variants = 2;
    std::uint64_t max_executions = 1'000'000;
    bool lemmas = false;
    std::string report_path;
    explore_cmd->add_option("protocol", protocol, "protocol id")->required();
    explore_cmd->add_option("--n", n, "party count")->required();
    explore_cmd->add_option("--f", f, "fault bound")->required();
    explore_cmd->add_option("--max-executions", max_executions, "execution cap (0: whole family)");
    explore_cmd->add_option("--variants", variants, "same-time delivery-order variants");
    explore_cmd->add_flag("--lemmas", lemmas, "run per-protocol invariant checks too");
    explore_cmd->add_option("--out", report_path, "write the JSON report here");

    auto* gen = app.add_subcommand("gen", "print generated scenarios");
    std::string gen_name, gen_protocol = "brb24", gen_out;
    int gen_n = 8, gen_f = 1;
    gen->add_option("generator", gen_name, "good | badcase | thm2 | thm3_chain")->required();
    gen->add_option("--protocol", gen_protocol, "protocol id");
    gen->add_option("--n", gen_n, "party count");
    gen->add_option("--f", gen_f, "fault bound");
    gen->add_option("--out", gen_out, "directory for scenario files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario_path, out_dir, seed);
        if (table->parsed()) return cmd_table(suite_path, csv_path);
        if (explore_cmd->parsed())
            return cmd_explore(protocol, n, f, max_executions, variants, seed, lemmas,
                               report_path);
        if (gen->parsed()) return cmd_gen(gen_name, gen_protocol, gen_n, gen_f, gen_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
