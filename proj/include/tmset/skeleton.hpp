// Layered skeleton of a binary Toeplitz sequence: per level l, the
// residues mod p_l that become periodic at that level and the symbol they
// carry. Supports exact densities, essential-period checks, regularity
// classification, and position evaluation at any depth.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tmset/exec.hpp"
#include "tmset/odometer.hpp"
#include "tmset/residue_set.hpp"
#include "tmset/rule.hpp"

namespace tmset {

// Raised when an operation requires positions that are still holes at the
// probed depth.
struct UndeterminedError : Error {
    UndeterminedError(std::string msg, std::vector<std::int64_t> pos)
        : Error(std::move(msg)), positions(std::move(pos)) {}
    std::vector<std::int64_t> positions;
};

struct EvalResult {
    std::optional<Symbol> symbol;
    int level = 0;  // determining level, or the depth probed if undetermined
    bool determined() const { return symbol.has_value(); }
};

// Residues newly filled at one level, sorted by residue.
struct Layer {
    int level = 0;
    std::vector<std::pair<BigInt, Symbol>> fills;
};

struct DensityRow {
    int level;
    BigInt p;
    BigInt filled;
    Rat density;    // D(p_l) = filled / p_l
    Rat one_minus;  // 1 - D(p_l)
};

enum class EssentialVerdict { essential, not_essential, unverifiable };
struct EssentialResult {
    EssentialVerdict verdict = EssentialVerdict::essential;
    std::uint64_t witness_prime = 0;  // r with Per(p/r) = Per(p)
    std::string note;
};

enum class RegularityVerdict { regular, irregular, undetermined };
struct RegularityResult {
    RegularityVerdict verdict = RegularityVerdict::undetermined;
    Interval one_minus_lim;  // encloses 1 - lim D(p_l)
    int ellmax = 0;
};

class SkeletonSpec {
public:
    enum class Backend { finite_table, ruled };
    static constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

    // Explicit layer table. Validates residue bounds and duplicates
    // within a level; cross-level consistency is checked lazily by eval
    // and comprehensively by families::validate.
    static SkeletonSpec from_layers(Scale scale, std::vector<Layer> layers,
                                    std::uint64_t budget = kDefaultBudget);

    // Rule-backed spec extended to `depth` levels. Enforces the rule
    // invariants (>= 1 hole and >= 1 fill per level; coverage digit
    // exclusion from the configured level onward).
    static SkeletonSpec from_rule(const RuledFamily& rule, int depth,
                                  std::uint64_t budget = kDefaultBudget);

    Backend backend() const { return d_->backend; }
    const Scale& scale() const { return d_->scale; }
    int depth() const { return d_->scale.depth(); }
    std::uint64_t budget() const { return d_->budget; }
    const RuledFamily* rule() const {
        return d_->rule ? &*d_->rule : nullptr;
    }
    // Explicit layers: all levels for finite tables; for ruled specs the
    // prefix with p_l <= budget.
    const std::vector<Layer>& layers() const { return d_->layers; }
    int materialized_depth() const { return d_->materialized_depth; }

    const BigInt& hole_count(int level) const;             // h_l
    BigInt filled_count(int level) const;                  // p_l - h_l
    const BigInt& new_fill_count(int level, Symbol s) const;
    Rat density(int level) const;
    Rat one_minus_density(int level) const;

    // Symbol of the least level <= maxdepth whose layer contains
    // n mod p_l; Undetermined(maxdepth) otherwise.
    EvalResult eval(std::int64_t n, int maxdepth) const;

    // Same question for a residue r mod p_level (mod-arithmetic route).
    EvalResult status_of_residue(const BigInt& r, int level) const;
    // Same question for a digit prefix (cylinder route, used by the
    // window membership test).
    EvalResult status_of_digits(std::span<const std::uint64_t> digits) const;

    // Whether residue r mod p_level is newly filled at exactly `level`.
    std::optional<Symbol> layer_fill(int level, const BigInt& r) const;

    // Per-residue fill map at one level: 0 = hole, 1 = symbol zero,
    // 2 = symbol one. Requires p_level <= budget. The serial path expands
    // layer lifts; the parallel path classifies each residue
    // independently.
    std::vector<std::uint8_t> fill_map(int level, Exec exec = Exec::serial) const;
    std::vector<std::uint64_t> hole_list(int level) const;

    // Per(p_l) as residues mod p_l (explicit when p_l <= budget).
    ResidueSet per_set(int level) const;

    std::vector<DensityRow> density_table(int ellmax) const;

    // Checks Per(p_l / r) != Per(p_l) for every prime r | p_l, reading
    // layer data up to `depth`.
    EssentialResult is_essential(int level, int depth) const;

    RegularityResult regularity(int ellmax) const;

private:
    struct Data {
        Backend backend = Backend::finite_table;
        Scale scale{std::vector<std::uint64_t>{2}};
        std::vector<Layer> layers;
        int materialized_depth = 0;
        std::optional<RuledFamily> rule;
        std::vector<RuleLevel> rule_levels;  // 1-based at index l-1
        std::uint64_t budget = kDefaultBudget;
        std::vector<BigInt> new_zero;  // per level, count of new 0-fills
        std::vector<BigInt> new_one;
        std::vector<BigInt> holes;  // h_0..h_L
    };
    std::shared_ptr<const Data> d_;

    explicit SkeletonSpec(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    static void fill_counts(Data& d);
};

// Determined word over the inclusive position range [a, b].
struct Word {
    std::int64_t start = 0;
    std::vector<Symbol> symbols;
    std::int64_t size() const { return static_cast<std::int64_t>(symbols.size()); }
    std::int64_t last() const { return start + size() - 1; }
    Symbol at(std::int64_t pos) const { return symbols.at(pos - start); }
};

std::vector<EvalResult> eval_range(const SkeletonSpec& spec, std::int64_t a,
                                   std::int64_t b, int maxdepth,
                                   Exec exec = Exec::parallel);

// Builds the word xi_a..xi_b; throws UndeterminedError listing holes.
Word make_word(const SkeletonSpec& spec, std::int64_t a, std::int64_t b,
               int maxdepth, Exec exec = Exec::parallel);

// Brute-force periodic-position scan: interior positions whose whole
// visible residue class agrees. Over-approximates Per(p) on short words.
struct BrutePerResult {
    std::uint64_t p = 0;
    std::vector<std::int64_t> positions;   // interior candidates, ascending
    std::vector<std::uint64_t> residues;   // candidate classes mod p
};
BrutePerResult brute_per(const Word& word, std::uint64_t p,
                         std::int64_t margin, Exec exec = Exec::parallel);

// Number of distinct length-n factors of xi on [a, b]. All positions must
// be determined by maxdepth.
std::int64_t complexity(const SkeletonSpec& spec, int n, std::int64_t a,
                        std::int64_t b, int maxdepth,
                        Exec exec = Exec::parallel);

}  // namespace tmset
