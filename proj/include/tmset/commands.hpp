// Subcommand implementations behind the CLI: gen, analyze, window,
// project, dim, verify. Each returns a deterministic report plus the
// process exit code (0 iff every check in the command passed).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmset/report.hpp"

namespace tmset {

struct Options {
    std::string spec_path;

    // gen
    std::string family;
    std::optional<std::uint64_t> q;
    std::vector<std::uint64_t> holes;

    std::optional<int> depth;
    std::optional<int> lmax;
    std::optional<std::pair<std::int64_t, std::int64_t>> range;
    std::string metric = "canonical";
    std::optional<std::uint64_t> budget;
    std::string format = "json";
    std::string out;
    std::optional<int> tail_start;
    bool explicit_sets = false;
};

struct CommandResult {
    Report report;
    int exit_code = 0;
};

CommandResult run_gen(const Options& opts);
CommandResult run_analyze(const Options& opts);
CommandResult run_window(const Options& opts);
CommandResult run_project(const Options& opts);
CommandResult run_dim(const Options& opts);
CommandResult run_verify(const Options& opts);

// Renders the report in opts.format and writes it to opts.out (or
// returns it for stdout when opts.out is empty).
std::string render_output(const Report& report, const Options& opts);

}  // namespace tmset
