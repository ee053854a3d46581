// Box-dimension estimators from exact covering counts: N(l) cylinders of
// diameter d_l cover the window boundary, and log N(l) / (-log d_l)
// factors as (slope term) * (ambient ratio).
#pragma once

#include <optional>
#include <vector>

#include "tmset/odometer.hpp"
#include "tmset/real.hpp"
#include "tmset/skeleton.hpp"

namespace tmset {

struct DimRow {
    int level = 0;
    BigInt p;
    BigInt cover_count;  // N(l) for the boundary report, p_l for ambient
    Rat diameter;
    Real raw_ratio;      // log(cover) / (-log d_l)
    Real slope_term;     // 1 + log(1 - D(p_l)) / log(p_l); 1 for ambient
    Real ambient_ratio;  // log(p_l) / (-log d_l)
    // Exact values where the inputs are powers of a common base.
    std::optional<Rat> raw_exact;
    std::optional<Rat> slope_exact;
    std::optional<Rat> ambient_exact;
};

struct TailSummary {
    Real sup;
    Real inf;
};

struct DimReport {
    bool boundary = false;
    bool hypothesis_violated = false;  // boundary report without regularity
    RegularityVerdict regularity = RegularityVerdict::undetermined;
    std::vector<DimRow> rows;
    // Running sup/inf of each ratio over levels >= tail_start: the
    // finite-depth stand-ins for the limsup/liminf in the dimension
    // formulas.
    int tail_start = 1;
    TailSummary raw_tail;
    TailSummary slope_tail;
    TailSummary ambient_tail;
};

// Finite-depth proxies for the box dimension of the whole group.
DimReport dim_ambient(const Scale& scale, const Metric& metric, int ellmax,
                      std::optional<int> tail_start = std::nullopt);

// Covering-count report for the window boundary. Requires a regular
// spec for the dimension formulas to mean anything; otherwise the report
// is emitted with hypothesis_violated set.
DimReport dim_boundary(const SkeletonSpec& spec, const Metric& metric,
                       int ellmax, std::optional<int> tail_start = std::nullopt);

}  // namespace tmset
