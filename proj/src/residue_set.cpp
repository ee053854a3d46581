#include "tmset/residue_set.hpp"

#include <algorithm>

namespace tmset {

ResidueSet ResidueSet::explicit_set(int level, BigInt modulus,
                                    std::vector<std::uint64_t> sorted) {
    ResidueSet s(level, std::move(modulus));
    if (!std::is_sorted(sorted.begin(), sorted.end()))
        throw Error("residue set: residues must be sorted");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error("residue set: duplicate residue");
    if (!sorted.empty() && BigInt(static_cast<unsigned long>(sorted.back())) >=
                               s.modulus_)
        throw Error("residue set: residue >= modulus");
    s.count_ = BigInt(static_cast<unsigned long>(sorted.size()));
    s.residues_ = std::move(sorted);
    return s;
}

ResidueSet ResidueSet::symbolic(int level, BigInt modulus, BigInt count) {
    ResidueSet s(level, std::move(modulus));
    if (count < 0 || count > s.modulus_)
        throw Error("residue set: cardinality out of range");
    s.count_ = std::move(count);
    return s;
}

const std::vector<std::uint64_t>& ResidueSet::residues() const {
    if (!residues_)
        throw Error("residue set: explicit residues unavailable "
                    "(cardinality-only representation)");
    return *residues_;
}

bool ResidueSet::contains(std::uint64_t r) const {
    const auto& v = residues();
    return std::binary_search(v.begin(), v.end(), r);
}

}  // namespace tmset
