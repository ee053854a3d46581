// The on-disk spec document (versioned JSON) and its canonical form.
//
// Finite backend:
//   {"version": 1, "backend": "finite", "scale": [q1, ...],
//    "layers": [{"level": l, "filled": [{"residue": r, "symbol": s}, ...]}]}
// Ruled backend:
//   {"version": 1, "backend": "ruled", "family": "ruler-alt",
//    "params": {...}, "depth": L}
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "tmset/families.hpp"
#include "tmset/odometer.hpp"
#include "tmset/skeleton.hpp"

namespace tmset {

using ordered_json = nlohmann::ordered_json;

struct LoadedSpec {
    SkeletonSpec spec;
    ordered_json canonical;
    std::string digest;  // fnv1a over the canonical dump
};

LoadedSpec parse_spec_text(const std::string& text,
                           std::optional<std::uint64_t> budget = std::nullopt,
                           std::optional<int> depth_override = std::nullopt);
LoadedSpec load_spec_file(const std::string& path,
                          std::optional<std::uint64_t> budget = std::nullopt,
                          std::optional<int> depth_override = std::nullopt);

// Canonical document for a spec (ruled specs keep their family form).
ordered_json emit_spec(const SkeletonSpec& spec);
std::string spec_digest(const SkeletonSpec& spec);

// Rational literal: "num/den", "num", or a JSON integer.
Rat parse_rat(const ordered_json& v);

// Metric file: {"diameters": ["1/2", "1/4", ...]}.
Metric load_metric_file(const std::string& path);

}  // namespace tmset
