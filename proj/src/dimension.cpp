#include "tmset/dimension.hpp"

#include <algorithm>

namespace tmset {

namespace {

Rat inverse(const Rat& r) { return make_rat(r.get_den(), r.get_num()); }

// d_l must be in (0, 1) so that -log d_l > 0.
Rat checked_diameter(const Scale& scale, const Metric& metric, int level) {
    Rat d = metric.diameter(scale, level);
    if (d >= 1)
        throw Error("dimension: invalid metric, d_" + std::to_string(level) +
                    " >= 1");
    return d;
}

void finish_tail(DimReport& report, std::optional<int> tail_start) {
    const int ellmax = report.rows.empty() ? 0 : report.rows.back().level;
    int start = tail_start.value_or(std::max(1, ellmax / 2));
    start = std::clamp(start, 1, std::max(1, ellmax));
    report.tail_start = start;
    bool first = true;
    auto fold = [&](TailSummary& tail, const Real& v) {
        if (first) {
            tail.sup = v;
            tail.inf = v;
        } else {
            if (tail.sup < v) tail.sup = v;
            if (v < tail.inf) tail.inf = v;
        }
    };
    for (const auto& row : report.rows) {
        if (row.level < start) continue;
        fold(report.raw_tail, row.raw_ratio);
        fold(report.slope_tail, row.slope_term);
        fold(report.ambient_tail, row.ambient_ratio);
        first = false;
    }
}

}  // namespace

DimReport dim_ambient(const Scale& scale, const Metric& metric, int ellmax,
                      std::optional<int> tail_start) {
    if (ellmax < 1) throw Error("dim_ambient: ellmax must be >= 1");
    DimReport report;
    report.boundary = false;
    report.regularity = RegularityVerdict::regular;  // not applicable
    for (int l = 1; l <= ellmax; ++l) {
        DimRow row;
        row.level = l;
        row.p = scale.p(l);
        row.cover_count = row.p;
        row.diameter = checked_diameter(scale, metric, l);
        const Rat inv_d = inverse(row.diameter);
        const Real log_p = Real::log_of(row.p);
        const Real neg_log_d = Real::log_of(inv_d);
        row.ambient_ratio = log_p / neg_log_d;
        row.raw_ratio = row.ambient_ratio;
        row.slope_term = Real::of(1L);
        row.ambient_exact = exact_log_ratio(Rat(row.p), inv_d);
        row.raw_exact = row.ambient_exact;
        row.slope_exact = Rat(1);
        report.rows.push_back(std::move(row));
    }
    finish_tail(report, tail_start);
    return report;
}

DimReport dim_boundary(const SkeletonSpec& spec, const Metric& metric,
                       int ellmax, std::optional<int> tail_start) {
    if (ellmax < 1 || ellmax > spec.depth())
        throw Error("dim_boundary: ellmax outside [1, depth]");
    DimReport report;
    report.boundary = true;
    const auto reg = spec.regularity(ellmax);
    report.regularity = reg.verdict;
    report.hypothesis_violated = reg.verdict != RegularityVerdict::regular;

    for (int l = 1; l <= ellmax; ++l) {
        const BigInt n_cover = spec.hole_count(l);
        if (n_cover == 0)
            throw Error("dim_boundary: N(" + std::to_string(l) +
                        ") = 0; the sequence is periodic at that level");
        DimRow row;
        row.level = l;
        row.p = spec.scale().p(l);
        row.cover_count = n_cover;
        row.diameter = checked_diameter(spec.scale(), metric, l);
        const Rat inv_d = inverse(row.diameter);
        const Rat one_minus = spec.one_minus_density(l);
        const Real neg_log_d = Real::log_of(inv_d);
        const Real log_p = Real::log_of(row.p);

        row.raw_ratio = Real::log_of(BigInt(n_cover)) / neg_log_d;
        row.slope_term = Real::of(1L) + Real::log_of(one_minus) / log_p;
        row.ambient_ratio = log_p / neg_log_d;

        row.raw_exact = n_cover == 1
                            ? std::optional<Rat>(Rat(0))
                            : exact_log_ratio(Rat(n_cover), inv_d);
        if (auto s = exact_log_ratio(one_minus, Rat(row.p)))
            row.slope_exact = Rat(1) + *s;
        row.ambient_exact = exact_log_ratio(Rat(row.p), inv_d);
        report.rows.push_back(std::move(row));
    }
    finish_tail(report, tail_start);
    return report;
}

}  // namespace tmset
