// Deterministic per-level generators for layered Toeplitz constructions.
// A rule fixes, for every level l, the digit base q_l and the digits that
// get filled together with their symbols; the remaining digits stay holes.
// The hole-count recurrence h_l = h_{l-1} * |H_l| then gives exact
// densities without enumeration.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tmset/numeric.hpp"

namespace tmset {

enum class Symbol : std::uint8_t { zero = 0, one = 1 };

inline int symbol_value(Symbol s) { return s == Symbol::one ? 1 : 0; }

// Default symbol assignment: alternates by level parity and by the rank
// of the fill digit, so consecutive levels and neighbouring fills differ.
inline Symbol default_symbol(int level, int rank) {
    return ((level + rank) % 2 == 1) ? Symbol::one : Symbol::zero;
}

struct RuleLevel {
    std::uint64_t q = 0;
    // Sorted by digit; the complement of the digits is the hole set H_l.
    std::vector<std::pair<std::uint64_t, Symbol>> fills;

    std::uint64_t hole_count() const { return q - fills.size(); }
    std::optional<Symbol> fill_symbol(std::uint64_t digit) const;
};

class RuledFamily {
public:
    enum class Kind { ruler_alt, fat_cantor, half_dim, frac_dim, bad_coverage };

    // Scale (2,2,2,...); the single hole digit alternates with level
    // parity, so every integer is eventually filled.
    static RuledFamily ruler_alt();
    // Scale q_l = 2^{l+1}; holes {1,...,q_l-2}; irregular with
    // 1 - D(p_l) = prod_{i<=l} (1 - 2^{-i}).
    static RuledFamily fat_cantor();
    // frac_dim(4, {1,2}): constant slope term 1/2.
    static RuledFamily half_dim();
    // Constant base q with a fixed hole digit set.
    static RuledFamily frac_dim(std::uint64_t q,
                                std::vector<std::uint64_t> holes);
    // Pathological: H_l = {q-1} at every level, so n = -1 is never
    // filled. Exists to exercise the validator.
    static RuledFamily bad_coverage(std::uint64_t q = 2);

    Kind kind() const { return kind_; }
    std::string name() const;
    std::uint64_t q_param() const { return q_; }
    const std::vector<std::uint64_t>& holes_param() const { return holes_; }

    RuleLevel level(int l) const;  // l >= 1

    // First level from which the hole set is guaranteed to exclude both
    // 0 and q_l - 1 (integer-coverage policy); 0 means never.
    int coverage_from() const;

    // Whether prod_{i>L} |H_i|/q_i = 0 for every L (so lim D = 1).
    bool tail_vanishes() const;
    // Rigorous lower bound for prod_{i>ellmax} |H_i|/q_i.
    Rat tail_product_lower(int ellmax) const;

private:
    RuledFamily(Kind k, std::uint64_t q, std::vector<std::uint64_t> holes)
        : kind_(k), q_(q), holes_(std::move(holes)) {}

    Kind kind_;
    std::uint64_t q_;
    std::vector<std::uint64_t> holes_;
};

}  // namespace tmset
