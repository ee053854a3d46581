#include "tmset/rule.hpp"

#include <algorithm>

namespace tmset {

std::optional<Symbol> RuleLevel::fill_symbol(std::uint64_t digit) const {
    auto it = std::lower_bound(
        fills.begin(), fills.end(), digit,
        [](const auto& f, std::uint64_t d) { return f.first < d; });
    if (it != fills.end() && it->first == digit) return it->second;
    return std::nullopt;
}

RuledFamily RuledFamily::ruler_alt() {
    return RuledFamily(Kind::ruler_alt, 2, {});
}

RuledFamily RuledFamily::fat_cantor() {
    return RuledFamily(Kind::fat_cantor, 2, {});
}

RuledFamily RuledFamily::half_dim() {
    return RuledFamily(Kind::half_dim, 4, {1, 2});
}

RuledFamily RuledFamily::frac_dim(std::uint64_t q,
                                  std::vector<std::uint64_t> holes) {
    if (q < 2) throw Error("frac_dim: base must be >= 2");
    std::sort(holes.begin(), holes.end());
    holes.erase(std::unique(holes.begin(), holes.end()), holes.end());
    if (holes.empty()) throw Error("frac_dim: needs at least one hole digit");
    if (holes.size() > q - 1)
        throw Error("frac_dim: needs at least one fill digit");
    if (holes.back() >= q) throw Error("frac_dim: hole digit out of range");
    return RuledFamily(Kind::frac_dim, q, std::move(holes));
}

RuledFamily RuledFamily::bad_coverage(std::uint64_t q) {
    if (q < 2) throw Error("bad_coverage: base must be >= 2");
    return RuledFamily(Kind::bad_coverage, q, {q - 1});
}

std::string RuledFamily::name() const {
    switch (kind_) {
        case Kind::ruler_alt: return "ruler-alt";
        case Kind::fat_cantor: return "fat-cantor";
        case Kind::half_dim: return "half-dim";
        case Kind::frac_dim: return "frac-dim";
        case Kind::bad_coverage: return "bad-coverage";
    }
    return "?";
}

namespace {

// Fill digits = complement of the hole digits; symbols by rank.
RuleLevel level_from_holes(int l, std::uint64_t q,
                           const std::vector<std::uint64_t>& holes) {
    RuleLevel out;
    out.q = q;
    int rank = 0;
    std::size_t hi = 0;
    for (std::uint64_t d = 0; d < q; ++d) {
        if (hi < holes.size() && holes[hi] == d) {
            ++hi;
            continue;
        }
        out.fills.emplace_back(d, default_symbol(l, rank));
        ++rank;
    }
    return out;
}

}  // namespace

RuleLevel RuledFamily::level(int l) const {
    if (l < 1) throw Error("rule level must be >= 1");
    switch (kind_) {
        case Kind::ruler_alt: {
            // Hole digit alternates: H_l = { l mod 2 }.
            const std::uint64_t hole = static_cast<std::uint64_t>(l % 2);
            RuleLevel out;
            out.q = 2;
            out.fills.emplace_back(1 - hole, default_symbol(l, 0));
            return out;
        }
        case Kind::fat_cantor: {
            if (l > 61) throw Error("fat-cantor: base exceeds 2^62 at level " +
                                    std::to_string(l));
            const std::uint64_t q = std::uint64_t{1} << (l + 1);
            RuleLevel out;
            out.q = q;
            out.fills.emplace_back(0, default_symbol(l, 0));
            out.fills.emplace_back(q - 1, default_symbol(l, 1));
            return out;
        }
        case Kind::half_dim:
        case Kind::frac_dim:
        case Kind::bad_coverage:
            return level_from_holes(l, q_, holes_);
    }
    throw Error("unreachable");
}

int RuledFamily::coverage_from() const {
    switch (kind_) {
        case Kind::fat_cantor:
            return 1;
        case Kind::half_dim:
        case Kind::frac_dim:
            if (holes_.front() != 0 && holes_.back() != q_ - 1 &&
                holes_.size() <= q_ - 2)
                return 1;
            return 0;
        case Kind::ruler_alt:
        case Kind::bad_coverage:
            return 0;  // ruler-alt covers by alternation instead
    }
    return 0;
}

bool RuledFamily::tail_vanishes() const {
    switch (kind_) {
        case Kind::fat_cantor:
            return false;  // prod (1 - 2^{-i}) > 0
        case Kind::ruler_alt:
        case Kind::half_dim:
        case Kind::frac_dim:
        case Kind::bad_coverage:
            return true;  // constant ratio |H|/q < 1
    }
    return false;
}

Rat RuledFamily::tail_product_lower(int ellmax) const {
    if (tail_vanishes()) return Rat(0);
    // fat-cantor: prod_{i>L} (1 - 2^{-i}) >= 1 - sum_{i>L} 2^{-i} = 1 - 2^{-L}.
    if (ellmax < 1) return Rat(0);
    Rat bound = Rat(1) - make_rat(1, pow_ui(2, static_cast<unsigned>(ellmax)));
    return bound > 0 ? bound : Rat(0);
}

}  // namespace tmset
