#include "tmset/window.hpp"

#include <algorithm>

#include "tmset/parallel.hpp"

namespace tmset {

namespace {

BigInt side_count(const SkeletonSpec& spec, int level, Symbol s) {
    BigInt count = 0;
    for (int i = 1; i <= level; ++i) {
        count *= BigInt(static_cast<unsigned long>(spec.scale().q(i)));
        count += spec.new_fill_count(i, s);
    }
    return count;
}

}  // namespace

WindowLevel window_level(const SkeletonSpec& spec, int level, SetDetail detail,
                         Exec exec) {
    if (level < 0 || level > spec.depth())
        throw Error("window_level: level outside [0, depth]");
    const BigInt& p = spec.scale().p(level);
    const BigInt u_count = side_count(spec, level, Symbol::one);
    const BigInt v_count = side_count(spec, level, Symbol::zero);
    const BigInt n_undet = p - u_count - v_count;

    const bool cheap = p <= BigInt(static_cast<unsigned long>(spec.budget()));
    const bool want_explicit = detail == SetDetail::explicit_required ||
                               (detail == SetDetail::explicit_if_cheap && cheap);
    if (detail == SetDetail::explicit_required && !cheap)
        throw Error("window_level: p_" + std::to_string(level) +
                    " exceeds the enumeration budget; use the hole-tree "
                    "counts instead of explicit residues");

    if (!want_explicit)
        return {level, ResidueSet::symbolic(level, p, u_count),
                ResidueSet::symbolic(level, p, v_count), n_undet};

    auto map = spec.fill_map(level, exec);
    std::vector<std::uint64_t> u_res, v_res;
    for (std::uint64_t r = 0; r < map.size(); ++r) {
        if (map[r] == 2) u_res.push_back(r);
        else if (map[r] == 1) v_res.push_back(r);
    }
    if (BigInt(static_cast<unsigned long>(u_res.size())) != u_count ||
        BigInt(static_cast<unsigned long>(v_res.size())) != v_count)
        throw Error("window_level: enumeration disagrees with fill counts "
                    "at level " + std::to_string(level));
    return {level, ResidueSet::explicit_set(level, p, std::move(u_res)),
            ResidueSet::explicit_set(level, p, std::move(v_res)), n_undet};
}

Membership membership(const OdometerPoint& point, const SkeletonSpec& spec,
                      int maxdepth) {
    if (!point.scale.same(spec.scale()))
        throw Error("membership: point scale differs from spec scale");
    if (maxdepth < 0 || maxdepth > static_cast<int>(point.digits.size()))
        throw Error("membership: point depth below maxdepth");
    auto st = spec.status_of_digits(
        std::span<const std::uint64_t>(point.digits.data(),
                                       static_cast<std::size_t>(maxdepth)));
    if (!st.determined()) return {Membership::Kind::undetermined, maxdepth};
    return {*st.symbol == Symbol::one ? Membership::Kind::in_u
                                      : Membership::Kind::in_v,
            st.level};
}

std::vector<std::int64_t> project(const SkeletonSpec& spec, std::int64_t a,
                                  std::int64_t b, int maxdepth, Exec exec) {
    if (b < a) return {};
    const std::int64_t n = b - a + 1;
    std::vector<std::int8_t> status(n, 0);  // 1 = in U, 0 = in V, -1 = hole
    for_each_index(n, exec, [&](std::int64_t i) {
        auto point = star(spec.scale(), BigInt(static_cast<long>(a + i)));
        auto m = membership(point, spec, maxdepth);
        status[i] = static_cast<std::int8_t>(
            m.kind == Membership::Kind::in_u
                ? 1
                : (m.kind == Membership::Kind::in_v ? 0 : -1));
    });
    std::vector<std::int64_t> undetermined;
    for (std::int64_t i = 0; i < n; ++i)
        if (status[i] < 0) undetermined.push_back(a + i);
    if (!undetermined.empty()) {
        std::string msg = "project: " + std::to_string(undetermined.size()) +
                          " integers undetermined at depth " +
                          std::to_string(maxdepth) +
                          ", first: " + std::to_string(undetermined.front());
        throw UndeterminedError(std::move(msg), std::move(undetermined));
    }
    std::vector<std::int64_t> hits;
    for (std::int64_t i = 0; i < n; ++i)
        if (status[i] == 1) hits.push_back(a + i);
    return hits;
}

Interval boundary_measure(const SkeletonSpec& spec, int ellmax) {
    if (ellmax < 1 || ellmax > spec.depth())
        throw Error("boundary_measure: ellmax outside [1, depth]");
    const Rat hi = spec.one_minus_density(ellmax);
    Rat lo(0);
    if (spec.rule()) {
        lo = hi * spec.rule()->tail_product_lower(ellmax);
        if (lo < 0) lo = 0;
    }
    return Interval(lo, hi);
}

namespace {

struct DescendantSymbols {
    bool zero = false;
    bool one = false;
};

// Symbols reachable below a hole residue between levels (from, to].
DescendantSymbols hole_descendant_symbols(const SkeletonSpec& spec,
                                          const BigInt& hole, int from,
                                          int to) {
    DescendantSymbols out;
    if (spec.backend() == SkeletonSpec::Backend::ruled) {
        // Level fills are global: every hole sees every deeper fill digit.
        for (int l = from + 1; l <= to && !(out.zero && out.one); ++l) {
            const RuleLevel lvl = spec.rule()->level(l);
            for (const auto& [digit, s] : lvl.fills)
                (s == Symbol::one ? out.one : out.zero) = true;
        }
        return out;
    }
    std::vector<BigInt> frontier{hole};
    std::uint64_t work = 0;
    for (int m = from + 1; m <= to && !frontier.empty(); ++m) {
        if (out.zero && out.one) break;
        std::vector<BigInt> next;
        const BigInt& p_prev = spec.scale().p(m - 1);
        for (const BigInt& h : frontier) {
            for (std::uint64_t t = 0; t < spec.scale().q(m); ++t) {
                if (++work > spec.budget())
                    throw Error("properness: descendant expansion exceeds "
                                "the enumeration budget");
                BigInt child =
                    h + BigInt(static_cast<unsigned long>(t)) * p_prev;
                if (auto s = spec.layer_fill(m, child))
                    (*s == Symbol::one ? out.one : out.zero) = true;
                else
                    next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace

PropernessResult properness_check(const SkeletonSpec& spec, int kappa,
                                  int maxdepth) {
    if (kappa < 0 || kappa > maxdepth || maxdepth > spec.depth())
        throw Error("properness_check: need 0 <= kappa <= maxdepth <= depth");
    PropernessResult out;
    out.kappa = kappa;
    out.depth = maxdepth;

    auto map = spec.fill_map(kappa, Exec::serial);
    for (std::uint64_t r = 0; r < map.size(); ++r) {
        if (map[r] != 0) continue;  // filled cylinders meet their side
        auto syms = hole_descendant_symbols(
            spec, BigInt(static_cast<unsigned long>(r)), kappa, maxdepth);
        // r is not inside V_kappa, so some descendant must reach U; and
        // symmetrically for V.
        if (!syms.one) {
            out.counterexample = r;
            out.missing_side = WindowSide::u;
            return out;
        }
        if (!syms.zero) {
            out.counterexample = r;
            out.missing_side = WindowSide::v;
            return out;
        }
    }
    out.verified = true;
    return out;
}

}  // namespace tmset
