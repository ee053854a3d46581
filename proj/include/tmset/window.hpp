// The cut-and-project window for a skeleton: level sets U_l (cylinders
// already filled with 1), V_l (filled with 0), membership tests against
// W = closure(U), the projection Lambda(W) to the integers, boundary
// measure enclosures, and finite-depth properness verification.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tmset/exec.hpp"
#include "tmset/odometer.hpp"
#include "tmset/residue_set.hpp"
#include "tmset/skeleton.hpp"

namespace tmset {

struct WindowLevel {
    int level = 0;
    ResidueSet u;
    ResidueSet v;
    BigInt undetermined;  // N(l) = p_l - |U_l| - |V_l|
};

enum class SetDetail { counts_only, explicit_if_cheap, explicit_required };

// U_l, V_l and N(l) at one level. Counts are exact at any level; explicit
// residue lists require p_l within the enumeration budget.
WindowLevel window_level(const SkeletonSpec& spec, int level,
                         SetDetail detail = SetDetail::explicit_if_cheap,
                         Exec exec = Exec::serial);

struct Membership {
    enum class Kind { in_u, in_v, undetermined } kind;
    int level = 0;  // least determining level, or the depth probed
};

// Locates a point relative to W: in_u means interior, in_v means outside
// the closure; undetermined points lie within 2 d_maxdepth of the
// boundary.
Membership membership(const OdometerPoint& point, const SkeletonSpec& spec,
                      int maxdepth);

// Lambda(W) over [a, b] via membership(star(n)); throws UndeterminedError
// when some n is not decided by maxdepth.
std::vector<std::int64_t> project(const SkeletonSpec& spec, std::int64_t a,
                                  std::int64_t b, int maxdepth,
                                  Exec exec = Exec::parallel);

// Encloses mu(boundary W) = 1 - lim D(p_l). The upper bound is
// 1 - D(p_ellmax); the lower bound uses the rule's tail product when one
// is available and is 0 otherwise.
Interval boundary_measure(const SkeletonSpec& spec, int ellmax);

enum class WindowSide { u, v };

struct PropernessResult {
    bool verified = false;
    int kappa = 0;
    int depth = 0;
    std::optional<std::uint64_t> counterexample;  // level-kappa residue
    std::optional<WindowSide> missing_side;       // side with no descendant
};

// Finite-depth properness evidence: every level-kappa cylinder not inside
// V must meet U by maxdepth, and symmetrically.
PropernessResult properness_check(const SkeletonSpec& spec, int kappa,
                                  int maxdepth);

}  // namespace tmset
