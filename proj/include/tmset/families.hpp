// Parametric skeleton generators and the validator that certifies the
// Toeplitz preconditions at finite depth.
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tmset/exec.hpp"
#include "tmset/skeleton.hpp"

namespace tmset {
namespace families {

// Rule-backed spec with the rule invariants enforced per level.
SkeletonSpec generate(const RuledFamily& rule, int depth,
                      std::uint64_t budget = SkeletonSpec::kDefaultBudget);

// Shipped presets: "ruler-alt", "fat-cantor", "half-dim", "bad-coverage".
SkeletonSpec preset(std::string_view name, int depth,
                    std::uint64_t budget = SkeletonSpec::kDefaultBudget);
bool is_preset_name(std::string_view name);

// Finite spec whose holes refine with symbol-1 fills only; properness
// fails on the V side.
SkeletonSpec planted_one_symbol(int depth);

// Scale (2,2) with both level-2 children of the hole filled with 0:
// residue 1 mod 2 becomes accidentally 2-periodic and p_2 = 4 is not
// essential.
SkeletonSpec planted_periodic();

struct ValidationReport {
    enum class Status { pass, fail, unverifiable };

    struct RefinementIssue {
        int level = 0;
        BigInt residue;
        int earlier_level = 0;
    };
    Status refinement = Status::pass;
    std::optional<RefinementIssue> refinement_witness;

    struct AccidentalRow {
        int level = 0;
        Status status = Status::pass;
        std::optional<std::uint64_t> witness;  // hole residue mod p_level
    };
    std::vector<AccidentalRow> accidental;

    Status coverage = Status::pass;
    std::vector<std::int64_t> uncovered;

    struct EssentialRow {
        int level = 0;
        EssentialResult result;
    };
    std::vector<EssentialRow> essential;

    Status nonperiodicity = Status::pass;
    int first_holeless_level = 0;

    int depth = 0;
    std::int64_t range_a = 0;
    std::int64_t range_b = 0;

    // No hard failure; unverifiable rows do not fail.
    bool ok() const;
};

// Checks, with layer data up to `depth`: refinement consistency, no
// accidental periodicity below hole residues, integer coverage on [a, b],
// essentialness of each p_l, and nonempty hole sets.
ValidationReport validate(const SkeletonSpec& spec, int depth, std::int64_t a,
                          std::int64_t b, Exec exec = Exec::parallel);

}  // namespace families
}  // namespace tmset
