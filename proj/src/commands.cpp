#include "tmset/commands.hpp"

#include <algorithm>
#include <fstream>

#include "tmset/dimension.hpp"
#include "tmset/families.hpp"
#include "tmset/specfile.hpp"
#include "tmset/window.hpp"

namespace tmset {

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUndetermined = 4;

LoadedSpec load(const Options& opts) {
    if (opts.spec_path.empty()) throw Error("missing spec file path");
    return load_spec_file(opts.spec_path, opts.budget, opts.depth);
}

Metric metric_from(const Options& opts) {
    if (opts.metric == "canonical") return Metric::canonical();
    return load_metric_file(opts.metric);
}

ordered_json range_json(std::int64_t a, std::int64_t b) {
    return ordered_json::array({a, b});
}

std::string verdict_name(RegularityVerdict v) {
    switch (v) {
        case RegularityVerdict::regular: return "regular";
        case RegularityVerdict::irregular: return "irregular";
        case RegularityVerdict::undetermined: return "undetermined";
    }
    return "?";
}

std::string verdict_name(EssentialVerdict v) {
    switch (v) {
        case EssentialVerdict::essential: return "essential";
        case EssentialVerdict::not_essential: return "not-essential";
        case EssentialVerdict::unverifiable: return "unverifiable";
    }
    return "?";
}

std::string status_name(families::ValidationReport::Status s) {
    using Status = families::ValidationReport::Status;
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::unverifiable: return "unverifiable";
    }
    return "?";
}

ordered_json interval_json(const Interval& itv, int sig = 12) {
    ordered_json v = ordered_json::object();
    v["lo"] = rat_json(itv.lo, sig);
    v["hi"] = rat_json(itv.hi, sig);
    v["width_dec"] = decimal_string(itv.width(), sig);
    return v;
}

}  // namespace

std::string render_output(const Report& report, const Options& opts) {
    std::string text = report.render(opts.format);
    if (!opts.out.empty()) {
        std::ofstream f(opts.out, std::ios::binary);
        if (!f) throw Error("cannot write output file: " + opts.out);
        f << text;
    }
    return text;
}

CommandResult run_gen(const Options& opts) {
    if (opts.family.empty()) throw Error("gen: missing --family");
    if (!opts.depth) throw Error("gen: missing --depth");
    if (opts.out.empty()) throw Error("gen: missing --out file");

    ordered_json doc = ordered_json::object();
    doc["version"] = 1;
    doc["backend"] = "ruled";
    doc["family"] = opts.family;
    ordered_json params = ordered_json::object();
    if (opts.q) params["q"] = *opts.q;
    if (!opts.holes.empty()) params["holes"] = opts.holes;
    doc["params"] = params;
    doc["depth"] = *opts.depth;

    LoadedSpec ls = parse_spec_text(doc.dump(), opts.budget);
    std::ofstream f(opts.out, std::ios::binary);
    if (!f) throw Error("gen: cannot write " + opts.out);
    f << ls.canonical.dump(2) << "\n";

    CommandResult res;
    res.report.command = "gen";
    res.report.args["family"] = opts.family;
    res.report.args["depth"] = *opts.depth;
    res.report.args["out"] = opts.out;
    res.report.spec_digest = ls.digest;
    res.report.results["written"] = opts.out;
    res.report.results["spec"] = ls.canonical;
    return res;
}

CommandResult run_analyze(const Options& opts) {
    LoadedSpec ls = load(opts);
    const SkeletonSpec& spec = ls.spec;
    const int lmax = std::clamp(opts.lmax.value_or(spec.depth()), 1,
                                spec.depth());

    CommandResult res;
    res.report.command = "analyze";
    res.report.args["spec"] = opts.spec_path;
    res.report.args["lmax"] = lmax;
    res.report.spec_digest = ls.digest;

    auto rows = spec.density_table(lmax);
    ordered_json jrows = ordered_json::array();
    Table table{"density", {"level", "p", "filled", "density_rat",
                            "density_dec", "one_minus_rat", "one_minus_dec"},
                {}};
    for (const auto& row : rows) {
        ordered_json jr = ordered_json::object();
        jr["level"] = row.level;
        jr["p"] = row.p.get_str();
        jr["filled"] = row.filled.get_str();
        jr["density"] = rat_json(row.density);
        jr["one_minus"] = rat_json(row.one_minus);
        jrows.push_back(std::move(jr));
        table.rows.push_back({std::to_string(row.level), row.p.get_str(),
                              row.filled.get_str(), rat_string(row.density),
                              decimal_string(row.density),
                              rat_string(row.one_minus),
                              decimal_string(row.one_minus)});
    }
    res.report.results["density"] = std::move(jrows);
    res.report.tables.push_back(std::move(table));

    auto reg = spec.regularity(lmax);
    ordered_json jreg = ordered_json::object();
    jreg["verdict"] = verdict_name(reg.verdict);
    jreg["one_minus_lim"] = interval_json(reg.one_minus_lim);
    jreg["lim_density_lo"] = rat_json(Rat(1) - reg.one_minus_lim.hi);
    jreg["lim_density_hi"] = rat_json(Rat(1) - reg.one_minus_lim.lo);
    res.report.results["regularity"] = std::move(jreg);

    auto bm = boundary_measure(spec, lmax);
    res.report.results["boundary_measure"] = interval_json(bm);
    res.report.notes.push_back("regularity: " + verdict_name(reg.verdict));

    Table summary{"summary",
                  {"quantity", "lo_rat", "hi_rat", "lo_dec", "hi_dec"},
                  {{"boundary_measure", rat_string(bm.lo), rat_string(bm.hi),
                    decimal_string(bm.lo), decimal_string(bm.hi)},
                   {"one_minus_lim_density", rat_string(reg.one_minus_lim.lo),
                    rat_string(reg.one_minus_lim.hi),
                    decimal_string(reg.one_minus_lim.lo),
                    decimal_string(reg.one_minus_lim.hi)}}};
    res.report.tables.push_back(std::move(summary));
    return res;
}

CommandResult run_window(const Options& opts) {
    LoadedSpec ls = load(opts);
    const SkeletonSpec& spec = ls.spec;
    const int lmax =
        std::clamp(opts.lmax.value_or(std::min(8, spec.depth())), 1,
                   spec.depth());
    const SetDetail detail = opts.explicit_sets ? SetDetail::explicit_required
                                                : SetDetail::counts_only;

    CommandResult res;
    res.report.command = "window";
    res.report.args["spec"] = opts.spec_path;
    res.report.args["lmax"] = lmax;
    res.report.args["explicit"] = opts.explicit_sets;
    res.report.spec_digest = ls.digest;

    ordered_json jrows = ordered_json::array();
    Table table{"window",
                {"level", "p", "u_count", "v_count", "undetermined",
                 "density_rat"},
                {}};
    Table residues{"window_residues", {"level", "side", "residue"}, {}};
    for (int l = 1; l <= lmax; ++l) {
        WindowLevel w = window_level(spec, l, detail);
        ordered_json jr = ordered_json::object();
        jr["level"] = l;
        jr["p"] = spec.scale().p(l).get_str();
        jr["u_count"] = w.u.count().get_str();
        jr["v_count"] = w.v.count().get_str();
        jr["undetermined"] = w.undetermined.get_str();
        if (w.u.is_explicit()) {
            jr["u_residues"] = w.u.residues();
            jr["v_residues"] = w.v.residues();
            for (std::uint64_t r : w.u.residues())
                residues.rows.push_back(
                    {std::to_string(l), "u", std::to_string(r)});
            for (std::uint64_t r : w.v.residues())
                residues.rows.push_back(
                    {std::to_string(l), "v", std::to_string(r)});
        }
        jrows.push_back(std::move(jr));
        table.rows.push_back({std::to_string(l), spec.scale().p(l).get_str(),
                              w.u.count().get_str(), w.v.count().get_str(),
                              w.undetermined.get_str(),
                              rat_string(spec.density(l))});
    }
    res.report.results["levels"] = std::move(jrows);
    res.report.tables.push_back(std::move(table));
    if (!residues.rows.empty())
        res.report.tables.push_back(std::move(residues));
    return res;
}

CommandResult run_project(const Options& opts) {
    if (!opts.range) throw Error("project: missing --range a:b");
    LoadedSpec ls = load(opts);
    const SkeletonSpec& spec = ls.spec;
    const auto [a, b] = *opts.range;
    const int maxdepth = std::clamp(opts.depth.value_or(spec.depth()), 1,
                                    spec.depth());

    CommandResult res;
    res.report.command = "project";
    res.report.args["spec"] = opts.spec_path;
    res.report.args["range"] = range_json(a, b);
    res.report.args["maxdepth"] = maxdepth;
    res.report.spec_digest = ls.digest;

    std::vector<std::int64_t> points;
    try {
        points = project(spec, a, b, maxdepth);
    } catch (const UndeterminedError& e) {
        res.report.ok = false;
        res.report.notes.push_back(std::string("UNDETERMINED: ") + e.what());
        ordered_json bad = ordered_json::array();
        for (std::size_t i = 0; i < e.positions.size() && i < 64; ++i)
            bad.push_back(e.positions[i]);
        res.report.results["undetermined"] = std::move(bad);
        res.exit_code = kExitUndetermined;
        return res;
    }

    // Cross-check: membership(star(n)) against direct skeleton
    // evaluation.
    std::int64_t mismatches = 0;
    {
        auto evals = eval_range(spec, a, b, maxdepth);
        std::size_t idx = 0;
        for (std::int64_t n = a; n <= b; ++n) {
            const bool in_lambda =
                idx < points.size() && points[idx] == n && (++idx, true);
            const bool is_one = evals[n - a].determined() &&
                                *evals[n - a].symbol == Symbol::one;
            if (in_lambda != is_one) ++mismatches;
        }
    }

    res.report.results["count"] =
        static_cast<std::int64_t>(points.size());
    res.report.results["points"] = points;
    res.report.results["crosscheck"] =
        mismatches == 0 ? "MATCH" : "MISMATCH";
    res.report.notes.push_back(
        mismatches == 0 ? "crosscheck: MATCH"
                        : "crosscheck: MISMATCH at " +
                              std::to_string(mismatches) + " positions");
    Table table{"projection", {"n"}, {}};
    for (std::int64_t n : points) table.rows.push_back({std::to_string(n)});
    res.report.tables.push_back(std::move(table));
    if (mismatches != 0) {
        res.report.ok = false;
        res.exit_code = kExitCheckFailed;
    }
    return res;
}

namespace {

void dim_rows_to_report(const DimReport& rep, const std::string& name,
                        Report& out) {
    ordered_json jrows = ordered_json::array();
    Table table{name,
                {"level", "p", "cover", "diameter_rat", "raw_dec", "slope_dec",
                 "ambient_dec", "raw_exact", "slope_exact", "ambient_exact"},
                {}};
    for (const auto& row : rep.rows) {
        ordered_json jr = ordered_json::object();
        jr["level"] = row.level;
        jr["p"] = row.p.get_str();
        jr["cover"] = row.cover_count.get_str();
        jr["diameter"] = rat_json(row.diameter);
        jr["raw_dec"] = row.raw_ratio.str();
        jr["slope_dec"] = row.slope_term.str();
        jr["ambient_dec"] = row.ambient_ratio.str();
        if (row.raw_exact) jr["raw_exact"] = rat_string(*row.raw_exact);
        if (row.slope_exact) jr["slope_exact"] = rat_string(*row.slope_exact);
        if (row.ambient_exact)
            jr["ambient_exact"] = rat_string(*row.ambient_exact);
        jrows.push_back(std::move(jr));
        table.rows.push_back(
            {std::to_string(row.level), row.p.get_str(),
             row.cover_count.get_str(), rat_string(row.diameter),
             row.raw_ratio.str(), row.slope_term.str(),
             row.ambient_ratio.str(),
             row.raw_exact ? rat_string(*row.raw_exact) : "",
             row.slope_exact ? rat_string(*row.slope_exact) : "",
             row.ambient_exact ? rat_string(*row.ambient_exact) : ""});
    }
    ordered_json jrep = ordered_json::object();
    jrep["rows"] = std::move(jrows);
    jrep["tail_start"] = rep.tail_start;
    ordered_json jtail = ordered_json::object();
    jtail["raw"] = ordered_json{{"sup", rep.raw_tail.sup.str()},
                                {"inf", rep.raw_tail.inf.str()}};
    jtail["slope"] = ordered_json{{"sup", rep.slope_tail.sup.str()},
                                  {"inf", rep.slope_tail.inf.str()}};
    jtail["ambient"] = ordered_json{{"sup", rep.ambient_tail.sup.str()},
                                    {"inf", rep.ambient_tail.inf.str()}};
    jrep["tail"] = std::move(jtail);
    Table tail_table{name + "_tail",
                     {"ratio", "tail_start", "sup", "inf"},
                     {{"raw", std::to_string(rep.tail_start),
                       rep.raw_tail.sup.str(), rep.raw_tail.inf.str()},
                      {"slope", std::to_string(rep.tail_start),
                       rep.slope_tail.sup.str(), rep.slope_tail.inf.str()},
                      {"ambient", std::to_string(rep.tail_start),
                       rep.ambient_tail.sup.str(), rep.ambient_tail.inf.str()}}};
    out.tables.push_back(std::move(tail_table));
    if (rep.boundary) {
        jrep["regularity"] = rep.hypothesis_violated ? "violated" : "regular";
    }
    out.results[name] = std::move(jrep);
    out.tables.push_back(std::move(table));
}

}  // namespace

CommandResult run_dim(const Options& opts) {
    LoadedSpec ls = load(opts);
    const SkeletonSpec& spec = ls.spec;
    Metric metric = metric_from(opts);
    int cap = spec.depth();
    if (metric.is_canonical()) cap = spec.depth() - 1;
    else cap = std::min(cap, metric.custom_depth());
    const int lmax = std::clamp(opts.lmax.value_or(std::min(cap, 24)), 1, cap);

    CommandResult res;
    res.report.command = "dim";
    res.report.args["spec"] = opts.spec_path;
    res.report.args["lmax"] = lmax;
    res.report.args["metric"] = opts.metric;
    res.report.spec_digest = ls.digest;

    DimReport ambient =
        dim_ambient(spec.scale(), metric, lmax, opts.tail_start);
    DimReport boundary = dim_boundary(spec, metric, lmax, opts.tail_start);
    dim_rows_to_report(ambient, "ambient", res.report);
    dim_rows_to_report(boundary, "boundary", res.report);
    if (boundary.hypothesis_violated)
        res.report.notes.push_back(
            "HYPOTHESIS VIOLATED: spec is not (provably) regular; boundary "
            "dimension formulas need lim D(p_l) = 1");
    return res;
}

CommandResult run_verify(const Options& opts) {
    LoadedSpec ls = load(opts);
    const SkeletonSpec& spec = ls.spec;
    const int depth = std::clamp(opts.depth.value_or(spec.depth()), 1,
                                 spec.depth());
    const auto [a, b] = opts.range.value_or(
        std::make_pair<std::int64_t, std::int64_t>(-1000, 1000));

    CommandResult res;
    res.report.command = "verify";
    res.report.args["spec"] = opts.spec_path;
    res.report.args["depth"] = depth;
    res.report.args["range"] = range_json(a, b);
    res.report.spec_digest = ls.digest;

    auto rep = families::validate(spec, depth, a, b);

    ordered_json jv = ordered_json::object();
    jv["refinement"] = status_name(rep.refinement);
    if (rep.refinement_witness) {
        ordered_json w = ordered_json::object();
        w["level"] = rep.refinement_witness->level;
        w["residue"] = rep.refinement_witness->residue.get_str();
        w["earlier_level"] = rep.refinement_witness->earlier_level;
        jv["refinement_witness"] = std::move(w);
    }
    ordered_json jacc = ordered_json::array();
    Table acc_table{"accidental_periodicity", {"level", "status", "witness"},
                    {}};
    for (const auto& row : rep.accidental) {
        ordered_json jr = ordered_json::object();
        jr["level"] = row.level;
        jr["status"] = status_name(row.status);
        if (row.witness) jr["witness"] = *row.witness;
        jacc.push_back(std::move(jr));
        acc_table.rows.push_back(
            {std::to_string(row.level), status_name(row.status),
             row.witness ? std::to_string(*row.witness) : ""});
    }
    jv["accidental"] = std::move(jacc);
    jv["coverage"] = status_name(rep.coverage);
    ordered_json junc = ordered_json::array();
    for (std::size_t i = 0; i < rep.uncovered.size() && i < 64; ++i)
        junc.push_back(rep.uncovered[i]);
    jv["uncovered"] = std::move(junc);
    ordered_json jess = ordered_json::array();
    Table ess_table{"essential_periods", {"level", "verdict", "witness"}, {}};
    for (const auto& row : rep.essential) {
        ordered_json jr = ordered_json::object();
        jr["level"] = row.level;
        jr["verdict"] = verdict_name(row.result.verdict);
        if (row.result.verdict == EssentialVerdict::not_essential)
            jr["witness_prime"] = row.result.witness_prime;
        jess.push_back(std::move(jr));
        ess_table.rows.push_back(
            {std::to_string(row.level), verdict_name(row.result.verdict),
             row.result.verdict == EssentialVerdict::not_essential
                 ? std::to_string(row.result.witness_prime)
                 : ""});
    }
    jv["essential"] = std::move(jess);
    jv["nonperiodicity"] = status_name(rep.nonperiodicity);
    if (rep.nonperiodicity == families::ValidationReport::Status::fail)
        jv["first_holeless_level"] = rep.first_holeless_level;
    jv["ok"] = rep.ok();
    res.report.results["validation"] = std::move(jv);

    Table checks{"checks", {"check", "status", "witness"}, {}};
    checks.rows.push_back(
        {"refinement", status_name(rep.refinement),
         rep.refinement_witness
             ? rep.refinement_witness->residue.get_str() + " at level " +
                   std::to_string(rep.refinement_witness->level)
             : ""});
    checks.rows.push_back(
        {"coverage", status_name(rep.coverage),
         rep.uncovered.empty() ? ""
                               : std::to_string(rep.uncovered.front())});
    checks.rows.push_back(
        {"nonperiodicity", status_name(rep.nonperiodicity),
         rep.nonperiodicity == families::ValidationReport::Status::fail
             ? "level " + std::to_string(rep.first_holeless_level)
             : ""});
    res.report.tables.push_back(std::move(checks));
    res.report.tables.push_back(std::move(acc_table));
    res.report.tables.push_back(std::move(ess_table));

    // Properness at small kappa, bounded by the enumeration budget.
    bool proper_ok = true;
    ordered_json jprop = ordered_json::array();
    Table prop_table{"properness",
                     {"kappa", "depth", "verdict", "counterexample", "side"},
                     {}};
    const BigInt budget_big(
        static_cast<unsigned long>(spec.budget()));
    for (int kappa = 1; kappa <= std::min(3, depth); ++kappa) {
        if (spec.scale().p(kappa) > budget_big) break;
        auto pr = properness_check(spec, kappa, depth);
        ordered_json jr = ordered_json::object();
        jr["kappa"] = kappa;
        jr["depth"] = depth;
        jr["verdict"] = pr.verified ? "verified-to-depth" : "counterexample";
        std::string cex, side;
        if (!pr.verified) {
            proper_ok = false;
            cex = std::to_string(*pr.counterexample);
            side = pr.missing_side == WindowSide::u ? "u" : "v";
            jr["counterexample"] = *pr.counterexample;
            jr["missing_side"] = side;
        }
        jprop.push_back(std::move(jr));
        prop_table.rows.push_back({std::to_string(kappa),
                                   std::to_string(depth),
                                   pr.verified ? "verified-to-depth"
                                               : "counterexample",
                                   cex, side});
    }
    res.report.results["properness"] = std::move(jprop);
    res.report.tables.push_back(std::move(prop_table));

    res.report.ok = rep.ok() && proper_ok;
    res.report.notes.push_back(res.report.ok ? "verification: PASS"
                                             : "verification: FAIL");
    if (!res.report.ok) res.exit_code = kExitCheckFailed;
    return res;
}

}  // namespace tmset
