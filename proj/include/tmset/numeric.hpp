// Exact arithmetic helpers shared by all modules: arbitrary-precision
// integers/rationals (GMP), rational intervals, deterministic decimal
// rendering, and exact log-ratio detection for commensurable inputs.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmset {

using BigInt = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonicalized rational num/den.
Rat make_rat(const BigInt& num, const BigInt& den);

// Floor modulus: result in [0, m). Requires m > 0.
BigInt floor_mod(const BigInt& a, const BigInt& m);

BigInt pow_ui(std::uint64_t base, unsigned exp);

// "num/den" with an explicit denominator, e.g. "3/4", "5/1".
std::string rat_string(const Rat& r);

// Decimal rendering with `sig` significant digits, correctly rounded
// (round-to-nearest). Deterministic across platforms.
std::string decimal_string(const Rat& r, int sig = 12);

// Closed rational interval [lo, hi].
struct Interval {
    Rat lo;
    Rat hi;

    Interval() = default;
    Interval(Rat l, Rat h);

    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& other) const {
        return lo <= other.lo && other.hi <= hi;
    }
    Rat width() const { return hi - lo; }
};

// Writes r as base^exp with base > 1 a rational that is not itself a
// perfect power, exp a nonzero integer. Empty for r == 1.
struct RatPower {
    BigInt base_num;
    BigInt base_den;
    long exp = 0;
};
std::optional<RatPower> minimal_base(const Rat& r);

// log(x)/log(y) as an exact rational when x and y are powers of a common
// base; empty otherwise. Requires x, y > 0 and y != 1. x == 1 yields 0.
std::optional<Rat> exact_log_ratio(const Rat& x, const Rat& y);

// Distinct prime factors, ascending. Deterministic Miller-Rabin plus
// Pollard rho; valid for the full uint64 range.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// FNV-1a over a byte string, rendered as 16 hex chars.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace tmset
