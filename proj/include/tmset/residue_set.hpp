// A set of residues mod p_l, standing for a union of level-l cylinders.
// Explicit sets carry the sorted residues; symbolic sets carry the exact
// cardinality only (used when p_l exceeds the enumeration budget).
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tmset/numeric.hpp"

namespace tmset {

class ResidueSet {
public:
    static ResidueSet explicit_set(int level, BigInt modulus,
                                   std::vector<std::uint64_t> sorted_residues);
    static ResidueSet symbolic(int level, BigInt modulus, BigInt count);

    int level() const { return level_; }
    const BigInt& modulus() const { return modulus_; }
    const BigInt& count() const { return count_; }
    bool is_explicit() const { return residues_.has_value(); }
    const std::vector<std::uint64_t>& residues() const;
    bool contains(std::uint64_t r) const;

    // Haar measure of the cylinder union: count / p_l.
    Rat measure() const { return make_rat(count_, modulus_); }

private:
    ResidueSet(int level, BigInt modulus) : level_(level), modulus_(std::move(modulus)) {}

    int level_ = 0;
    BigInt modulus_;
    BigInt count_;
    std::optional<std::vector<std::uint64_t>> residues_;
};

}  // namespace tmset
