// Shared data and independent oracles for the test suites. Everything in
// here is deliberately naive: linear scans, string sets, hand-expanded
// layer tables.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tmset/families.hpp"
#include "tmset/skeleton.hpp"

namespace testsup {

using namespace tmset;

// Hand expansion of the ruler-alt construction, levels 1..6.
// Level l fills one residue: the non-hole child of the level-(l-1) hole,
// with symbol 1 on odd levels and 0 on even levels.
inline std::vector<Layer> ruler_alt_layers6() {
    std::vector<Layer> layers;
    layers.push_back({1, {{BigInt(0), Symbol::one}}});    // 0 mod 2 -> 1
    layers.push_back({2, {{BigInt(3), Symbol::zero}}});   // 3 mod 4 -> 0
    layers.push_back({3, {{BigInt(1), Symbol::one}}});    // 1 mod 8 -> 1
    layers.push_back({4, {{BigInt(13), Symbol::zero}}});  // 13 mod 16 -> 0
    layers.push_back({5, {{BigInt(5), Symbol::one}}});    // 5 mod 32 -> 1
    layers.push_back({6, {{BigInt(53), Symbol::zero}}});  // 53 mod 64 -> 0
    return layers;
}

// Least-level lookup by linear scan over an explicit layer table.
inline EvalResult naive_eval(const Scale& scale,
                             const std::vector<Layer>& layers, std::int64_t n,
                             int maxdepth) {
    for (int l = 1; l <= maxdepth; ++l) {
        const BigInt r = floor_mod(BigInt(static_cast<long>(n)), scale.p(l));
        for (const auto& [res, sym] : layers[l - 1].fills)
            if (res == r) return {sym, l};
    }
    return {std::nullopt, maxdepth};
}

inline std::string word_string(const SkeletonSpec& spec, std::int64_t a,
                               std::int64_t b, int maxdepth) {
    std::string out;
    for (std::int64_t n = a; n <= b; ++n) {
        auto r = spec.eval(n, maxdepth);
        if (!r.determined()) throw Error("word_string: undetermined position");
        out += (*r.symbol == Symbol::one) ? '1' : '0';
    }
    return out;
}

// Distinct length-n factors via a string set.
inline std::int64_t naive_complexity(const std::string& word, int n) {
    std::set<std::string> factors;
    for (std::size_t i = 0; i + n <= word.size(); ++i)
        factors.insert(word.substr(i, n));
    return static_cast<std::int64_t>(factors.size());
}

// Interior positions of [a, b] whose whole residue class mod p is
// constant on the word.
inline std::set<std::int64_t> naive_per_positions(const std::string& word,
                                                  std::int64_t a,
                                                  std::uint64_t p,
                                                  std::int64_t margin) {
    const std::int64_t b = a + static_cast<std::int64_t>(word.size()) - 1;
    std::set<std::int64_t> out;
    for (std::int64_t k = a + margin; k <= b - margin; ++k) {
        bool ok = true;
        for (std::int64_t m = k % static_cast<std::int64_t>(p); m <= b;
             m += static_cast<std::int64_t>(p)) {
            std::int64_t first = m;
            while (first < a) first += static_cast<std::int64_t>(p);
            if (word[first - a] != word[k - a]) {
                ok = false;
                break;
            }
        }
        if (ok) out.insert(k);
    }
    return out;
}

// Exhaustive essential-period oracle on a generated word: p is essential
// iff no smaller modulus yields the same visible periodic-position set.
inline bool oracle_essential(const SkeletonSpec& spec, int level,
                             int word_depth) {
    const std::uint64_t p = spec.scale().p(level).get_ui();
    const std::int64_t ip = static_cast<std::int64_t>(p);
    const std::string word = word_string(spec, 0, 16 * ip - 1, word_depth);
    auto per = [&](std::uint64_t modulus) {
        return naive_per_positions(word, 0, modulus, ip);
    };
    const auto full = per(p);
    for (std::uint64_t q = 1; q < p; ++q)
        if (per(q) == full) return false;
    return true;
}

// Exact partial product prod_{i<=L} (1 - 2^{-i}).
inline Rat fat_cantor_partial(int L) {
    Rat prod(1);
    for (int i = 1; i <= L; ++i)
        prod *= Rat(1) - make_rat(1, pow_ui(2, static_cast<unsigned>(i)));
    return prod;
}

// Rigorous enclosure of prod_{i>=1} (1 - 2^{-i}) from a deep partial
// product and the Weierstrass tail bound.
inline Interval fat_cantor_enclosure(int L = 200) {
    const Rat partial = fat_cantor_partial(L);
    const Rat tail = Rat(1) - make_rat(1, pow_ui(2, static_cast<unsigned>(L)));
    return Interval(partial * tail, partial);
}

// Round-half-up to `dp` decimal places, returned as the scaled integer.
inline BigInt rounded_scaled(const Rat& r, int dp) {
    const Rat scaled = r * Rat(pow_ui(10, static_cast<unsigned>(dp)));
    const Rat shifted = scaled + make_rat(1, 2);
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), shifted.get_num().get_mpz_t(),
               shifted.get_den().get_mpz_t());
    return out;
}

}  // namespace testsup
