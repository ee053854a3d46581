#include "tmset/families.hpp"

#include <algorithm>

#include "tmset/parallel.hpp"

namespace tmset {
namespace families {

SkeletonSpec generate(const RuledFamily& rule, int depth,
                      std::uint64_t budget) {
    return SkeletonSpec::from_rule(rule, depth, budget);
}

SkeletonSpec preset(std::string_view name, int depth, std::uint64_t budget) {
    if (name == "ruler-alt")
        return generate(RuledFamily::ruler_alt(), depth, budget);
    if (name == "fat-cantor")
        return generate(RuledFamily::fat_cantor(), depth, budget);
    if (name == "half-dim")
        return generate(RuledFamily::half_dim(), depth, budget);
    if (name == "bad-coverage")
        return generate(RuledFamily::bad_coverage(), depth, budget);
    throw Error("unknown preset: " + std::string(name));
}

bool is_preset_name(std::string_view name) {
    return name == "ruler-alt" || name == "fat-cantor" ||
           name == "half-dim" || name == "bad-coverage";
}

SkeletonSpec planted_one_symbol(int depth) {
    if (depth < 2) throw Error("planted_one_symbol: depth must be >= 2");
    Scale scale(std::vector<std::uint64_t>(depth, 2));
    std::vector<Layer> layers;
    // Level 1 fills 0 mod 2; afterwards the upper child of the running
    // hole gets filled, always with symbol 1.
    layers.push_back({1, {{BigInt(0), Symbol::one}}});
    BigInt hole = 1;
    for (int l = 2; l <= depth; ++l) {
        BigInt fill = hole + scale.p(l - 1);
        layers.push_back({l, {{fill, Symbol::one}}});
    }
    return SkeletonSpec::from_layers(scale, std::move(layers));
}

SkeletonSpec planted_periodic() {
    Scale scale({2, 2});
    std::vector<Layer> layers;
    layers.push_back({1, {{BigInt(0), Symbol::one}}});
    layers.push_back({2, {{BigInt(1), Symbol::zero}, {BigInt(3), Symbol::zero}}});
    return SkeletonSpec::from_layers(scale, std::move(layers));
}

bool ValidationReport::ok() const {
    if (refinement == Status::fail || coverage == Status::fail ||
        nonperiodicity == Status::fail)
        return false;
    for (const auto& row : accidental)
        if (row.status == Status::fail) return false;
    for (const auto& row : essential)
        if (row.result.verdict == EssentialVerdict::not_essential) return false;
    return true;
}

namespace {

using Status = ValidationReport::Status;

void check_refinement(const SkeletonSpec& spec, int depth,
                      ValidationReport& report) {
    // Rule-generated levels refine holes by construction; materialized
    // layers (and all finite layers) are checked explicitly.
    const int upto = std::min(depth, spec.materialized_depth());
    for (int l = 2; l <= upto; ++l) {
        for (const auto& [r, s] : spec.layers()[l - 1].fills) {
            for (int i = 1; i < l; ++i) {
                const BigInt ri = floor_mod(r, spec.scale().p(i));
                if (spec.layer_fill(i, ri)) {
                    report.refinement = Status::fail;
                    report.refinement_witness = {l, r, i};
                    return;
                }
            }
        }
    }
}

void check_accidental(const SkeletonSpec& spec, int depth,
                      ValidationReport& report) {
    const BigInt budget(static_cast<unsigned long>(spec.budget()));
    for (int l = 1; l <= depth; ++l) {
        ValidationReport::AccidentalRow row;
        row.level = l;
        if (spec.hole_count(l) == 0) {
            row.status = Status::pass;  // nothing to check, no holes left
            report.accidental.push_back(row);
            continue;
        }
        if (spec.backend() == SkeletonSpec::Backend::ruled) {
            // Every hole sees the same deeper fills.
            bool zero = false, one = false;
            for (int m = l + 1; m <= depth; ++m)
                for (const auto& [digit, s] : spec.rule()->level(m).fills)
                    (s == Symbol::one ? one : zero) = true;
            row.status = (zero && one) ? Status::pass : Status::unverifiable;
            report.accidental.push_back(row);
            continue;
        }
        if (spec.scale().p(l) > budget) {
            row.status = Status::unverifiable;
            report.accidental.push_back(row);
            continue;
        }
        bool any_unverifiable = false;
        for (std::uint64_t hole : spec.hole_list(l)) {
            bool zero = false, one = false, holes_remain = false;
            std::vector<BigInt> frontier{BigInt(static_cast<unsigned long>(hole))};
            std::uint64_t work = 0;
            for (int m = l + 1; m <= depth && !frontier.empty(); ++m) {
                if (zero && one) break;
                std::vector<BigInt> next;
                const BigInt& p_prev = spec.scale().p(m - 1);
                for (const BigInt& h : frontier) {
                    for (std::uint64_t t = 0; t < spec.scale().q(m); ++t) {
                        if (++work > spec.budget()) {
                            holes_remain = true;
                            next.clear();
                            frontier.clear();
                            break;
                        }
                        BigInt child =
                            h + BigInt(static_cast<unsigned long>(t)) * p_prev;
                        if (auto s = spec.layer_fill(m, child))
                            (*s == Symbol::one ? one : zero) = true;
                        else
                            next.push_back(std::move(child));
                    }
                    if (holes_remain) break;
                }
                if (!holes_remain) frontier = std::move(next);
            }
            if (!frontier.empty()) holes_remain = true;
            if (zero && one) continue;
            if (holes_remain) {
                any_unverifiable = true;
                continue;
            }
            row.status = Status::fail;  // one-symbol (or empty) refinement
            row.witness = hole;
            break;
        }
        if (row.status == Status::pass && any_unverifiable)
            row.status = Status::unverifiable;
        report.accidental.push_back(row);
    }
}

void check_coverage(const SkeletonSpec& spec, int depth, std::int64_t a,
                    std::int64_t b, Exec exec, ValidationReport& report) {
    if (b < a) return;
    auto results = eval_range(spec, a, b, depth, exec);
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(results.size()); ++i)
        if (!results[i].determined()) report.uncovered.push_back(a + i);
    if (!report.uncovered.empty()) report.coverage = Status::fail;
}

}  // namespace

ValidationReport validate(const SkeletonSpec& spec, int depth, std::int64_t a,
                          std::int64_t b, Exec exec) {
    if (depth < 1 || depth > spec.depth())
        throw Error("validate: depth outside [1, scale depth]");
    ValidationReport report;
    report.depth = depth;
    report.range_a = a;
    report.range_b = b;

    check_refinement(spec, depth, report);
    check_accidental(spec, depth, report);
    check_coverage(spec, depth, a, b, exec, report);
    for (int l = 1; l <= depth; ++l)
        report.essential.push_back({l, spec.is_essential(l, depth)});
    for (int l = 1; l <= depth; ++l) {
        if (spec.hole_count(l) == 0) {
            report.nonperiodicity = Status::fail;
            report.first_holeless_level = l;
            break;
        }
    }
    return report;
}

}  // namespace families
}  // namespace tmset
