#include "tmset/skeleton.hpp"

#include <algorithm>
#include <unordered_set>

#include "tmset/parallel.hpp"

namespace tmset {

namespace {

std::optional<Symbol> layer_lookup(const Layer& layer, const BigInt& r) {
    auto it = std::lower_bound(
        layer.fills.begin(), layer.fills.end(), r,
        [](const auto& f, const BigInt& v) { return f.first < v; });
    if (it != layer.fills.end() && it->first == r) return it->second;
    return std::nullopt;
}

}  // namespace

SkeletonSpec SkeletonSpec::from_layers(Scale scale, std::vector<Layer> layers,
                                       std::uint64_t budget) {
    auto d = std::make_shared<Data>();
    d->backend = Backend::finite_table;
    d->scale = scale;
    d->budget = budget;
    const int L = scale.depth();

    d->layers.resize(L);
    for (int l = 1; l <= L; ++l) d->layers[l - 1].level = l;
    for (auto& layer : layers) {
        if (layer.level < 1 || layer.level > L)
            throw Error("layers: level " + std::to_string(layer.level) +
                        " outside scale depth " + std::to_string(L));
        auto& slot = d->layers[layer.level - 1];
        if (!slot.fills.empty())
            throw Error("layers: level " + std::to_string(layer.level) +
                        " listed twice");
        slot.fills = std::move(layer.fills);
    }
    for (auto& layer : d->layers) {
        std::sort(layer.fills.begin(), layer.fills.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        const BigInt& p = scale.p(layer.level);
        for (std::size_t i = 0; i < layer.fills.size(); ++i) {
            const BigInt& r = layer.fills[i].first;
            if (r < 0 || r >= p)
                throw Error("layers: residue " + r.get_str() + " >= p_" +
                            std::to_string(layer.level) + " = " + p.get_str());
            if (i > 0 && layer.fills[i - 1].first == r)
                throw Error("layers: duplicate residue " + r.get_str() +
                            " at level " + std::to_string(layer.level));
        }
    }
    d->materialized_depth = L;
    fill_counts(*d);
    return SkeletonSpec(std::move(d));
}

SkeletonSpec SkeletonSpec::from_rule(const RuledFamily& rule, int depth,
                                     std::uint64_t budget) {
    if (depth < 1) throw Error("rule spec: depth must be >= 1");
    auto d = std::make_shared<Data>();
    d->backend = Backend::ruled;
    d->rule = rule;
    d->budget = budget;

    std::vector<std::uint64_t> bases;
    bases.reserve(depth);
    const int cover_from = rule.coverage_from();
    for (int l = 1; l <= depth; ++l) {
        RuleLevel lvl = rule.level(l);
        if (lvl.fills.empty())
            throw Error("rule: level " + std::to_string(l) + " fills nothing");
        if (lvl.fills.size() >= lvl.q)
            throw Error("rule: level " + std::to_string(l) +
                        " leaves no hole digit");
        for (std::size_t i = 0; i < lvl.fills.size(); ++i) {
            if (lvl.fills[i].first >= lvl.q)
                throw Error("rule: fill digit out of range at level " +
                            std::to_string(l));
            if (i > 0 && lvl.fills[i - 1].first >= lvl.fills[i].first)
                throw Error("rule: fill digits not strictly sorted at level " +
                            std::to_string(l));
        }
        if (cover_from > 0 && l >= cover_from) {
            const bool has_zero = lvl.fill_symbol(0).has_value();
            const bool has_max = lvl.fill_symbol(lvl.q - 1).has_value();
            if (!has_zero || !has_max)
                throw Error("rule: coverage policy requires digits 0 and q-1 "
                            "filled from level " + std::to_string(cover_from));
        }
        bases.push_back(lvl.q);
        d->rule_levels.push_back(std::move(lvl));
    }
    d->scale = Scale(std::move(bases));

    // Materialize explicit layers while p_l stays within the budget.
    std::vector<std::uint64_t> holes_prev{0};
    const BigInt budget_big(static_cast<unsigned long>(budget));
    int mat = 0;
    for (int l = 1; l <= depth && d->scale.p(l) <= budget_big; ++l) {
        const std::uint64_t p_prev = d->scale.p(l - 1).get_ui();
        const RuleLevel& lvl = d->rule_levels[l - 1];
        Layer layer;
        layer.level = l;
        layer.fills.reserve(holes_prev.size() * lvl.fills.size());
        std::vector<std::uint64_t> holes_cur;
        holes_cur.reserve(holes_prev.size() * lvl.hole_count());
        for (std::uint64_t digit = 0; digit < lvl.q; ++digit) {
            auto sym = lvl.fill_symbol(digit);
            for (std::uint64_t h : holes_prev) {
                const std::uint64_t r = h + digit * p_prev;
                if (sym)
                    layer.fills.emplace_back(
                        BigInt(static_cast<unsigned long>(r)), *sym);
                else
                    holes_cur.push_back(r);
            }
        }
        std::sort(layer.fills.begin(), layer.fills.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::sort(holes_cur.begin(), holes_cur.end());
        d->layers.push_back(std::move(layer));
        holes_prev = std::move(holes_cur);
        mat = l;
    }
    d->materialized_depth = mat;
    fill_counts(*d);
    return SkeletonSpec(std::move(d));
}

void SkeletonSpec::fill_counts(Data& d) {
    const int L = d.scale.depth();
    d.new_zero.assign(L + 1, BigInt(0));
    d.new_one.assign(L + 1, BigInt(0));
    d.holes.assign(L + 1, BigInt(0));
    d.holes[0] = 1;
    for (int l = 1; l <= L; ++l) {
        BigInt n0 = 0, n1 = 0;
        if (d.backend == Backend::ruled) {
            int f0 = 0, f1 = 0;
            for (const auto& [digit, s] : d.rule_levels[l - 1].fills)
                (s == Symbol::one ? f1 : f0)++;
            n0 = d.holes[l - 1] * f0;
            n1 = d.holes[l - 1] * f1;
        } else {
            for (const auto& [r, s] : d.layers[l - 1].fills)
                (s == Symbol::one ? n1 : n0) += 1;
        }
        d.holes[l] = d.holes[l - 1] *
                         BigInt(static_cast<unsigned long>(d.scale.q(l))) -
                     n0 - n1;
        if (d.holes[l] < 0)
            throw Error("layers: more fills than holes at level " +
                        std::to_string(l));
        d.new_zero[l] = std::move(n0);
        d.new_one[l] = std::move(n1);
    }
}

const BigInt& SkeletonSpec::hole_count(int level) const {
    if (level < 0 || level > depth()) throw Error("hole_count: bad level");
    return d_->holes[level];
}

BigInt SkeletonSpec::filled_count(int level) const {
    return scale().p(level) - hole_count(level);
}

const BigInt& SkeletonSpec::new_fill_count(int level, Symbol s) const {
    if (level < 1 || level > depth()) throw Error("new_fill_count: bad level");
    return s == Symbol::one ? d_->new_one[level] : d_->new_zero[level];
}

Rat SkeletonSpec::density(int level) const {
    return make_rat(filled_count(level), scale().p(level));
}

Rat SkeletonSpec::one_minus_density(int level) const {
    return make_rat(hole_count(level), scale().p(level));
}

EvalResult SkeletonSpec::eval(std::int64_t n, int maxdepth) const {
    if (maxdepth < 0 || maxdepth > depth())
        throw Error("eval: maxdepth outside [0, " + std::to_string(depth()) +
                    "]");
    if (maxdepth == 0) return {std::nullopt, 0};
    if (backend() == Backend::ruled) {
        // Early-exit digit walk: extract digits level by level.
        BigInt r_prev = 0;
        for (int l = 1; l <= maxdepth; ++l) {
            BigInt r = floor_mod(BigInt(static_cast<long>(n)), scale().p(l));
            BigInt digit_big = (r - r_prev) / scale().p(l - 1);
            const std::uint64_t digit = digit_big.get_ui();
            if (auto s = d_->rule_levels[l - 1].fill_symbol(digit))
                return {*s, l};
            r_prev = std::move(r);
        }
        return {std::nullopt, maxdepth};
    }
    return status_of_residue(
        floor_mod(BigInt(static_cast<long>(n)), scale().p(maxdepth)),
        maxdepth);
}

EvalResult SkeletonSpec::status_of_residue(const BigInt& r, int level) const {
    if (level < 0 || level > depth())
        throw Error("status_of_residue: bad level");
    if (r < 0 || (level <= depth() && r >= scale().p(level)))
        throw Error("status_of_residue: residue out of range");
    if (backend() == Backend::ruled) {
        auto digits = digits_of(scale(), r, level);
        return status_of_digits(digits);
    }
    std::optional<EvalResult> found;
    for (int l = 1; l <= level; ++l) {
        const BigInt rl = floor_mod(r, scale().p(l));
        if (auto s = layer_lookup(d_->layers[l - 1], rl)) {
            if (found)
                throw Error("inconsistent spec: residue " + rl.get_str() +
                            " filled at levels " + std::to_string(found->level) +
                            " and " + std::to_string(l));
            found = EvalResult{*s, l};
        }
    }
    if (found) return *found;
    return {std::nullopt, level};
}

EvalResult SkeletonSpec::status_of_digits(
    std::span<const std::uint64_t> digits) const {
    const int L = static_cast<int>(digits.size());
    if (L > depth()) throw Error("status_of_digits: prefix deeper than scale");
    if (backend() == Backend::ruled) {
        for (int l = 1; l <= L; ++l) {
            if (digits[l - 1] >= scale().q(l))
                throw Error("status_of_digits: digit out of bounds");
            if (auto s = d_->rule_levels[l - 1].fill_symbol(digits[l - 1]))
                return {*s, l};
        }
        return {std::nullopt, L};
    }
    // Finite table: accumulate k(l, w) and look it up per level.
    BigInt k = 0;
    std::optional<EvalResult> found;
    for (int l = 1; l <= L; ++l) {
        if (digits[l - 1] >= scale().q(l))
            throw Error("status_of_digits: digit out of bounds");
        k += BigInt(static_cast<unsigned long>(digits[l - 1])) *
             scale().p(l - 1);
        if (auto s = layer_lookup(d_->layers[l - 1], k)) {
            if (found)
                throw Error("inconsistent spec: residue " + k.get_str() +
                            " filled at levels " + std::to_string(found->level) +
                            " and " + std::to_string(l));
            found = EvalResult{*s, l};
        }
    }
    if (found) return *found;
    return {std::nullopt, L};
}

std::optional<Symbol> SkeletonSpec::layer_fill(int level, const BigInt& r) const {
    if (level < 1 || level > depth()) throw Error("layer_fill: bad level");
    if (r < 0 || r >= scale().p(level))
        throw Error("layer_fill: residue out of range");
    if (level <= materialized_depth())
        return layer_lookup(d_->layers[level - 1], r);
    // Ruled levels beyond the materialized prefix: newly filled means all
    // earlier digits are holes and the level digit is a fill.
    auto digits = digits_of(scale(), r, level);
    for (int l = 1; l < level; ++l)
        if (d_->rule_levels[l - 1].fill_symbol(digits[l - 1]))
            return std::nullopt;
    return d_->rule_levels[level - 1].fill_symbol(digits[level - 1]);
}

std::vector<std::uint8_t> SkeletonSpec::fill_map(int level, Exec exec) const {
    if (level < 0 || level > depth()) throw Error("fill_map: bad level");
    const BigInt& p = scale().p(level);
    if (p > BigInt(static_cast<unsigned long>(budget())))
        throw Error("fill_map: p_" + std::to_string(level) +
                    " = " + p.get_str() + " exceeds enumeration budget " +
                    std::to_string(budget()) +
                    " (use the hole-tree counts instead)");
    const std::uint64_t n = p.get_ui();
    std::vector<std::uint8_t> map(n, 0);
    if (exec == Exec::serial) {
        // Reference path: expand layer lifts.
        for (int l = 1; l <= std::min(level, materialized_depth()); ++l) {
            const std::uint64_t pl = scale().p(l).get_ui();
            const std::uint64_t stride = n / pl;
            for (const auto& [r, s] : d_->layers[l - 1].fills) {
                const std::uint64_t base = r.get_ui();
                for (std::uint64_t j = 0; j < stride; ++j) {
                    const std::uint64_t idx = base + j * pl;
                    if (map[idx] != 0)
                        throw Error("inconsistent spec: residue " +
                                    std::to_string(idx) +
                                    " filled at two levels");
                    map[idx] = static_cast<std::uint8_t>(1 + symbol_value(s));
                }
            }
        }
        return map;
    }
    for_each_index(static_cast<std::int64_t>(n), exec, [&](std::int64_t i) {
        auto st = status_of_residue(BigInt(static_cast<unsigned long>(i)),
                                    level);
        map[i] = st.determined()
                     ? static_cast<std::uint8_t>(1 + symbol_value(*st.symbol))
                     : 0;
    });
    return map;
}

std::vector<std::uint64_t> SkeletonSpec::hole_list(int level) const {
    auto map = fill_map(level, Exec::serial);
    std::vector<std::uint64_t> holes;
    for (std::uint64_t r = 0; r < map.size(); ++r)
        if (map[r] == 0) holes.push_back(r);
    return holes;
}

ResidueSet SkeletonSpec::per_set(int level) const {
    const BigInt& p = scale().p(level);
    if (p <= BigInt(static_cast<unsigned long>(budget()))) {
        auto map = fill_map(level, Exec::serial);
        std::vector<std::uint64_t> filled;
        for (std::uint64_t r = 0; r < map.size(); ++r)
            if (map[r] != 0) filled.push_back(r);
        if (BigInt(static_cast<unsigned long>(filled.size())) !=
            filled_count(level))
            throw Error("inconsistent spec: fill count mismatch at level " +
                        std::to_string(level));
        return ResidueSet::explicit_set(level, p, std::move(filled));
    }
    return ResidueSet::symbolic(level, p, filled_count(level));
}

std::vector<DensityRow> SkeletonSpec::density_table(int ellmax) const {
    if (ellmax < 0 || ellmax > depth())
        throw Error("density_table: ellmax outside scale depth");
    std::vector<DensityRow> rows;
    rows.reserve(ellmax);
    for (int l = 1; l <= ellmax; ++l)
        rows.push_back({l, scale().p(l), filled_count(l), density(l),
                        one_minus_density(l)});
    return rows;
}

namespace {

struct ClassProbe {
    bool saw_zero = false;
    bool saw_one = false;
    bool holes_remain = false;
    bool has_filled = false;

    void add(Symbol s) {
        (s == Symbol::one ? saw_one : saw_zero) = true;
    }
    bool nonconstant() const { return saw_zero && saw_one; }
    bool constant() const {
        return !holes_remain && !nonconstant() && (saw_zero || saw_one);
    }
};

}  // namespace

EssentialResult SkeletonSpec::is_essential(int level, int probe_depth) const {
    if (level < 0 || level > depth() || probe_depth < level ||
        probe_depth > depth())
        throw Error("is_essential: need 0 <= level <= depth <= scale depth");
    if (level == 0) return {EssentialVerdict::essential, 0, "p_0 = 1"};

    const BigInt& p = scale().p(level);
    if (p > BigInt(static_cast<unsigned long>(budget())))
        return {EssentialVerdict::unverifiable, 0,
                "p_" + std::to_string(level) + " exceeds enumeration budget"};
    const std::uint64_t pl = p.get_ui();

    std::vector<std::uint64_t> primes;
    for (int l = 1; l <= level; ++l)
        for (std::uint64_t q : prime_factors(scale().q(l)))
            primes.push_back(q);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    // Deeper fill symbols below any hole are level-global for rule-backed
    // specs: every hole sees the same future.
    bool rule_deep_zero = false, rule_deep_one = false;
    if (backend() == Backend::ruled) {
        for (int l = level + 1; l <= probe_depth; ++l)
            for (const auto& [digit, s] : d_->rule_levels[l - 1].fills)
                (s == Symbol::one ? rule_deep_one : rule_deep_zero) = true;
    }

    bool any_unverifiable = false;
    for (std::uint64_t r : primes) {
        const std::uint64_t divisor = pl / r;
        bool differs = false;
        bool unknown_with_filled = false;
        for (std::uint64_t c = 0; c < divisor && !differs; ++c) {
            ClassProbe probe;
            std::vector<BigInt> holes;
            for (std::uint64_t j = 0; j < r; ++j) {
                const BigInt m(static_cast<unsigned long>(c + j * divisor));
                auto st = status_of_residue(m, level);
                if (st.determined()) {
                    probe.add(*st.symbol);
                    probe.has_filled = true;
                } else {
                    holes.push_back(m);
                }
            }
            if (!holes.empty() && !probe.nonconstant()) {
                if (backend() == Backend::ruled) {
                    if (rule_deep_zero) probe.add(Symbol::zero);
                    if (rule_deep_one) probe.add(Symbol::one);
                    probe.holes_remain = true;  // rules always keep a hole
                } else {
                    // Finite table: expand hole descendants level by level.
                    std::vector<BigInt> frontier = holes;
                    std::uint64_t work = 0;
                    for (int m = level + 1;
                         m <= probe_depth && !frontier.empty() &&
                         !probe.nonconstant();
                         ++m) {
                        std::vector<BigInt> next;
                        const BigInt& p_prev = scale().p(m - 1);
                        for (const BigInt& h : frontier) {
                            for (std::uint64_t t = 0; t < scale().q(m); ++t) {
                                work++;
                                if (work > budget()) {
                                    probe.holes_remain = true;
                                    next.clear();
                                    frontier.clear();
                                    break;
                                }
                                BigInt child =
                                    h + BigInt(static_cast<unsigned long>(t)) *
                                            p_prev;
                                if (auto s = layer_lookup(d_->layers[m - 1],
                                                          child))
                                    probe.add(*s);
                                else
                                    next.push_back(std::move(child));
                            }
                            if (work > budget()) break;
                        }
                        frontier = std::move(next);
                    }
                    if (!frontier.empty()) probe.holes_remain = true;
                }
            } else if (!holes.empty()) {
                probe.holes_remain = true;
            }
            if (probe.nonconstant() && probe.has_filled)
                differs = true;
            else if (!probe.constant() && probe.has_filled &&
                     !probe.nonconstant())
                unknown_with_filled = true;
        }
        if (differs) continue;
        if (!unknown_with_filled)
            return {EssentialVerdict::not_essential, r,
                    "Per(p/" + std::to_string(r) + ") = Per(p)"};
        any_unverifiable = true;
    }
    if (any_unverifiable)
        return {EssentialVerdict::unverifiable, 0,
                "holes at depth " + std::to_string(probe_depth) +
                    " leave some classes unresolved"};
    return {EssentialVerdict::essential, 0, ""};
}

RegularityResult SkeletonSpec::regularity(int ellmax) const {
    if (ellmax < 1 || ellmax > depth())
        throw Error("regularity: ellmax outside [1, depth]");
    if (backend() == Backend::ruled) {
        if (d_->rule->tail_vanishes())
            return {RegularityVerdict::regular, Interval(Rat(0), Rat(0)),
                    ellmax};
        const Rat base = one_minus_density(ellmax);
        const Rat lo = base * d_->rule->tail_product_lower(ellmax);
        if (lo > 0)
            return {RegularityVerdict::irregular, Interval(lo, base), ellmax};
        return {RegularityVerdict::undetermined, Interval(Rat(0), base),
                ellmax};
    }
    return {RegularityVerdict::undetermined,
            Interval(Rat(0), one_minus_density(ellmax)), ellmax};
}

std::vector<EvalResult> eval_range(const SkeletonSpec& spec, std::int64_t a,
                                   std::int64_t b, int maxdepth, Exec exec) {
    if (b < a) return {};
    const std::int64_t n = b - a + 1;
    std::vector<EvalResult> out(n);
    for_each_index(n, exec,
                   [&](std::int64_t i) { out[i] = spec.eval(a + i, maxdepth); });
    return out;
}

Word make_word(const SkeletonSpec& spec, std::int64_t a, std::int64_t b,
               int maxdepth, Exec exec) {
    if (b < a) throw Error("make_word: empty range");
    auto results = eval_range(spec, a, b, maxdepth, exec);
    std::vector<std::int64_t> missing;
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(results.size()); ++i)
        if (!results[i].determined()) missing.push_back(a + i);
    if (!missing.empty()) {
        std::string msg = "positions undetermined at depth " +
                          std::to_string(maxdepth) +
                          ", first: " + std::to_string(missing.front());
        throw UndeterminedError(std::move(msg), std::move(missing));
    }
    Word w;
    w.start = a;
    w.symbols.reserve(results.size());
    for (const auto& r : results) w.symbols.push_back(*r.symbol);
    return w;
}

BrutePerResult brute_per(const Word& word, std::uint64_t p,
                         std::int64_t margin, Exec exec) {
    if (p < 1) throw Error("brute_per: p must be >= 1");
    const std::int64_t a = word.start, b = word.last();
    if (b - a < 3 * static_cast<std::int64_t>(p))
        throw Error("brute_per: window too small (needs b - a >= 3p)");
    if (margin < static_cast<std::int64_t>(p))
        throw Error("brute_per: margin must be >= p");
    const std::int64_t lo = a + margin, hi = b - margin;
    if (lo > hi) throw Error("brute_per: window too small for margin");

    // Class-wise: k agrees with all visible translates iff its whole
    // residue class is constant on the word.
    std::vector<std::uint8_t> class_ok(p, 0);
    for_each_index(static_cast<std::int64_t>(p), exec, [&](std::int64_t r) {
        std::int64_t first = a + ((r - a) % static_cast<std::int64_t>(p) +
                                  static_cast<std::int64_t>(p)) %
                                     static_cast<std::int64_t>(p);
        bool ok = true;
        Symbol s = word.at(first);
        for (std::int64_t k = first; k <= b;
             k += static_cast<std::int64_t>(p)) {
            if (word.at(k) != s) {
                ok = false;
                break;
            }
        }
        class_ok[r] = ok ? 1 : 0;
    });

    BrutePerResult out;
    out.p = p;
    for (std::int64_t k = lo; k <= hi; ++k) {
        const std::uint64_t r = static_cast<std::uint64_t>(
            ((k % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) %
            static_cast<std::int64_t>(p));
        if (class_ok[r]) out.positions.push_back(k);
    }
    for (std::uint64_t r = 0; r < p; ++r)
        if (class_ok[r]) out.residues.push_back(r);
    return out;
}

std::int64_t complexity(const SkeletonSpec& spec, int n, std::int64_t a,
                        std::int64_t b, int maxdepth, Exec exec) {
    if (n < 1) throw Error("complexity: factor length must be >= 1");
    if (b - a < n) throw Error("complexity: window shorter than n");
    if (n > 64) throw Error("complexity: factor length > 64 unsupported");
    Word w = make_word(spec, a, b, maxdepth, exec);
    const std::int64_t starts = w.size() - n + 1;

    auto pack = [&](std::int64_t off) {
        std::uint64_t v = 0;
        for (int j = 0; j < n; ++j)
            v = (v << 1) | static_cast<std::uint64_t>(
                               symbol_value(w.symbols[off + j]));
        return v;
    };

    if (exec == Exec::serial || !parallel_available()) {
        std::unordered_set<std::uint64_t> factors;
        for (std::int64_t i = 0; i < starts; ++i) factors.insert(pack(i));
        return static_cast<std::int64_t>(factors.size());
    }

    std::unordered_set<std::uint64_t> merged;
#ifdef _OPENMP
#pragma omp parallel
    {
        std::unordered_set<std::uint64_t> local;
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < starts; ++i) local.insert(pack(i));
#pragma omp critical
        merged.merge(local);
    }
#else
    for (std::int64_t i = 0; i < starts; ++i) merged.insert(pack(i));
#endif
    return static_cast<std::int64_t>(merged.size());
}

}  // namespace tmset
