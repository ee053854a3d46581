// Fixed-precision (256-bit) real numbers for the reporting layer. Core
// quantities stay exact rationals; logs are taken here only.
#pragma once

#include <mpfr.h>

#include <string>

#include "tmset/numeric.hpp"

namespace tmset {

class Real {
public:
    static constexpr mpfr_prec_t kPrec = 256;

    Real();
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(Real o) noexcept;
    ~Real();

    static Real of(long v);
    static Real of(const BigInt& v);
    static Real of(const Rat& v);
    static Real log_of(const BigInt& v);  // v > 0
    static Real log_of(const Rat& v);     // v > 0

    Real operator+(const Real& o) const;
    Real operator-(const Real& o) const;
    Real operator*(const Real& o) const;
    Real operator/(const Real& o) const;
    Real operator-() const;
    Real abs() const;

    int cmp(const Real& o) const;
    bool operator<(const Real& o) const { return cmp(o) < 0; }
    bool operator>(const Real& o) const { return cmp(o) > 0; }
    bool operator<=(const Real& o) const { return cmp(o) <= 0; }
    bool operator>=(const Real& o) const { return cmp(o) >= 0; }

    double to_double() const;
    std::string str(int sig = 50) const;

private:
    mpfr_t x_;
    friend void swap(Real& a, Real& b) noexcept { mpfr_swap(a.x_, b.x_); }
};

}  // namespace tmset
