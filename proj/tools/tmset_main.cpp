// tmset — Toeplitz model-set toolkit.
//
// Subcommands: gen, analyze, window, project, dim, verify.
// Exit codes: 0 all checks passed; 1 check failed (MISMATCH, validation
// or properness failure); 2 usage or input error; 4 undetermined
// integers in a projection.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tmset/commands.hpp"
#include "tmset/numeric.hpp"

namespace {

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
    const auto colon = s.find(':', 1);  // both ends may be negative
    if (colon == std::string::npos)
        throw tmset::Error("range must look like a:b, got \"" + s + "\"");
    try {
        return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw tmset::Error("range must look like a:b, got \"" + s + "\"");
    }
}

void add_common(CLI::App* cmd, tmset::Options& opts, std::string& range_str) {
    cmd->add_option("--budget", opts.budget,
                    "explicit-enumeration budget for p_l (default 2^20)");
    cmd->add_option("--format", opts.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opts.out, "write the report to a file");
    cmd->add_option("--range", range_str, "integer range a:b");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tmset — Toeplitz sequences as model sets over odometers"};
    app.require_subcommand(1);

    tmset::Options opts;
    std::string range_str;
    int depth = 0, lmax = 0, tail_start = 0;

    auto* gen = app.add_subcommand("gen", "emit a preset/rule spec file");
    gen->add_option("--family", opts.family,
                    "ruler-alt | fat-cantor | half-dim | frac-dim | "
                    "bad-coverage")
        ->required();
    gen->add_option("--depth", depth, "number of levels")->required();
    std::uint64_t q_param = 0;
    gen->add_option("--q", q_param, "digit base (frac-dim, bad-coverage)");
    gen->add_option("--holes", opts.holes,
                    "hole digits (frac-dim), e.g. --holes 1 2");
    add_common(gen, opts, range_str);

    auto* analyze = app.add_subcommand(
        "analyze", "density table, regularity, boundary measure");
    analyze->add_option("spec", opts.spec_path, "spec file")->required();
    analyze->add_option("--lmax", lmax, "deepest level to report");
    analyze->add_option("--depth", depth, "rebuild ruled spec to this depth");
    add_common(analyze, opts, range_str);

    auto* window = app.add_subcommand(
        "window", "U_l / V_l cardinalities and N(l) per level");
    window->add_option("spec", opts.spec_path, "spec file")->required();
    window->add_option("--lmax", lmax, "deepest level to report");
    window->add_option("--depth", depth, "rebuild ruled spec to this depth");
    window->add_flag("--explicit", opts.explicit_sets,
                     "include explicit residues (errors above budget)");
    add_common(window, opts, range_str);

    auto* project = app.add_subcommand(
        "project", "Lambda(W) over a range, cross-checked against evaluation");
    project->add_option("spec", opts.spec_path, "spec file")->required();
    project->add_option("--depth", depth, "membership probe depth");
    add_common(project, opts, range_str);

    auto* dim = app.add_subcommand(
        "dim", "ambient and boundary box-dimension reports");
    dim->add_option("spec", opts.spec_path, "spec file")->required();
    dim->add_option("--lmax", lmax, "deepest level to report");
    dim->add_option("--depth", depth, "rebuild ruled spec to this depth");
    dim->add_option("--metric", opts.metric,
                    "\"canonical\" or a metric JSON file");
    dim->add_option("--tail-start", tail_start,
                    "first level of the tail window (default lmax/2)");
    add_common(dim, opts, range_str);

    auto* verify = app.add_subcommand(
        "verify", "validation report plus properness check");
    verify->add_option("spec", opts.spec_path, "spec file")->required();
    verify->add_option("--depth", depth, "probe depth");
    add_common(verify, opts, range_str);

    CLI11_PARSE(app, argc, argv);

    if (depth > 0) opts.depth = depth;
    if (lmax > 0) opts.lmax = lmax;
    if (tail_start > 0) opts.tail_start = tail_start;
    if (q_param > 0) opts.q = q_param;

    try {
        if (!range_str.empty()) opts.range = parse_range(range_str);
        tmset::CommandResult result;
        if (gen->parsed()) {
            result = tmset::run_gen(opts);
            opts.out.clear();  // --out named the spec file, not the report
        }
        else if (analyze->parsed()) result = tmset::run_analyze(opts);
        else if (window->parsed()) result = tmset::run_window(opts);
        else if (project->parsed()) result = tmset::run_project(opts);
        else if (dim->parsed()) result = tmset::run_dim(opts);
        else result = tmset::run_verify(opts);

        const std::string text = tmset::render_output(result.report, opts);
        if (opts.out.empty()) std::fputs(text.c_str(), stdout);
        return result.exit_code;
    } catch (const tmset::Error& e) {
        std::cerr << "tmset: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "tmset: internal error: " << e.what() << "\n";
        return 2;
    }
}
