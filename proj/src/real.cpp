#include "tmset/real.hpp"

namespace tmset {

Real::Real() { mpfr_init2(x_, kPrec); mpfr_set_zero(x_, 1); }

Real::Real(const Real& o) {
    mpfr_init2(x_, kPrec);
    mpfr_set(x_, o.x_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(x_, kPrec);
    mpfr_swap(x_, o.x_);
}

Real& Real::operator=(Real o) noexcept {
    mpfr_swap(x_, o.x_);
    return *this;
}

Real::~Real() { mpfr_clear(x_); }

Real Real::of(long v) {
    Real r;
    mpfr_set_si(r.x_, v, MPFR_RNDN);
    return r;
}

Real Real::of(const BigInt& v) {
    Real r;
    mpfr_set_z(r.x_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real Real::of(const Rat& v) {
    Real r;
    mpfr_set_q(r.x_, v.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real Real::log_of(const BigInt& v) {
    if (v <= 0) throw Error("log of nonpositive integer");
    Real r = of(v);
    mpfr_log(r.x_, r.x_, MPFR_RNDN);
    return r;
}

Real Real::log_of(const Rat& v) {
    if (v <= 0) throw Error("log of nonpositive rational");
    Real r = of(v);
    mpfr_log(r.x_, r.x_, MPFR_RNDN);
    return r;
}

Real Real::operator+(const Real& o) const {
    Real r;
    mpfr_add(r.x_, x_, o.x_, MPFR_RNDN);
    return r;
}

Real Real::operator-(const Real& o) const {
    Real r;
    mpfr_sub(r.x_, x_, o.x_, MPFR_RNDN);
    return r;
}

Real Real::operator*(const Real& o) const {
    Real r;
    mpfr_mul(r.x_, x_, o.x_, MPFR_RNDN);
    return r;
}

Real Real::operator/(const Real& o) const {
    Real r;
    mpfr_div(r.x_, x_, o.x_, MPFR_RNDN);
    return r;
}

Real Real::operator-() const {
    Real r;
    mpfr_neg(r.x_, x_, MPFR_RNDN);
    return r;
}

Real Real::abs() const {
    Real r;
    mpfr_abs(r.x_, x_, MPFR_RNDN);
    return r;
}

int Real::cmp(const Real& o) const { return mpfr_cmp(x_, o.x_); }

double Real::to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

std::string Real::str(int sig) const {
    if (sig < 1) sig = 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", sig, x_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

}  // namespace tmset
