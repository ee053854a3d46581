// Mixed-radix arithmetic on finite truncations of the odometer group
// prod_l Z/q_l Z: carry addition, the star map n -> tau^n(0), the digit
// tuple <-> integer bijection k(l, w), and cylinder diameters.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "tmset/numeric.hpp"

namespace tmset {

// Digit bases q_1..q_L with partial products p_0 = 1, p_l = q_1*...*q_l.
// Immutable; copies share storage.
class Scale {
public:
    explicit Scale(std::vector<std::uint64_t> q);

    int depth() const { return static_cast<int>(d_->q.size()); }
    std::uint64_t q(int level) const;       // level in [1, depth]
    const BigInt& p(int level) const;       // level in [0, depth]
    const std::vector<std::uint64_t>& bases() const { return d_->q; }

    bool same(const Scale& o) const;

private:
    struct Data {
        std::vector<std::uint64_t> q;
        std::vector<BigInt> p;  // p[0..depth]
    };
    std::shared_ptr<const Data> d_;
};

// A depth-L truncation of a group element, as digits w_i in [0, q_i).
struct OdometerPoint {
    Scale scale;
    std::vector<std::uint64_t> digits;
};

OdometerPoint zero_point(const Scale& s);

// Digitwise sum with carry; overflow beyond depth L is dropped, so the
// arithmetic is exact mod p_L. Both points must share scale and depth.
OdometerPoint add(const OdometerPoint& a, const OdometerPoint& b);

// tau^n(0) truncated to the scale depth; n may be negative.
OdometerPoint star(const Scale& s, const BigInt& n);

// k(l, w) = sum_i w_i p_{i-1}; bijective onto [0, p_l) for digit tuples
// of length l.
BigInt k_of(const Scale& s, std::span<const std::uint64_t> digits);

// Inverse of k_of: the mixed-radix digits of k, for k in [0, p_level).
std::vector<std::uint64_t> digits_of(const Scale& s, const BigInt& k,
                                     int level);

// Cylinder diameters d_l. Canonical means d_l = 1/p_{l+1}; a custom
// metric supplies d_1, d_2, ... as exact rationals, strictly decreasing.
class Metric {
public:
    static Metric canonical();
    static Metric custom(std::vector<Rat> diameters);

    bool is_canonical() const { return canonical_; }
    // Canonical: level in [0, depth-1]. Custom: level in [1, size].
    Rat diameter(const Scale& s, int level) const;
    int custom_depth() const { return static_cast<int>(d_.size()); }

private:
    Metric() = default;
    bool canonical_ = true;
    std::vector<Rat> d_;
};

}  // namespace tmset
