#include "tmset/numeric.hpp"

#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <cstdio>
#include <numeric>
#include <utility>

namespace tmset {

Rat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

BigInt floor_mod(const BigInt& a, const BigInt& m) {
    if (m <= 0) throw Error("floor_mod: modulus must be positive");
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt pow_ui(std::uint64_t base, unsigned exp) {
    BigInt b(static_cast<unsigned long>(base));
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
    return r;
}

std::string rat_string(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string decimal_string(const Rat& r, int sig) {
    if (sig < 1) sig = 1;
    mpfr_t x;
    mpfr_init2(x, std::max(192, sig * 4 + 32));
    mpfr_set_q(x, r.get_mpq_t(), MPFR_RNDN);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", sig, x);
    std::string out(buf);
    mpfr_free_str(buf);
    mpfr_clear(x);
    return out;
}

Interval::Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw Error("interval with lo > hi");
}

namespace {

// Largest e such that both n and d are exact e-th powers (value != 1).
std::optional<RatPower> minimal_base_gt1(const BigInt& n, const BigInt& d) {
    unsigned long bound = ULONG_MAX;
    if (n > 1) bound = std::min(bound, mpz_sizeinbase(n.get_mpz_t(), 2));
    if (d > 1) bound = std::min(bound, mpz_sizeinbase(d.get_mpz_t(), 2));
    BigInt rn, rd;
    for (unsigned long e = bound; e >= 1; --e) {
        bool ok = true;
        if (n > 1)
            ok = ok && mpz_root(rn.get_mpz_t(), n.get_mpz_t(), e) != 0;
        else
            rn = n;
        if (ok && d > 1)
            ok = ok && mpz_root(rd.get_mpz_t(), d.get_mpz_t(), e) != 0;
        else if (ok)
            rd = d;
        if (ok)
            return RatPower{rn, rd, static_cast<long>(e)};
    }
    return std::nullopt;
}

}  // namespace

std::optional<RatPower> minimal_base(const Rat& r) {
    if (r <= 0) throw Error("minimal_base: argument must be positive");
    if (r == 1) return std::nullopt;
    BigInt n = r.get_num(), d = r.get_den();
    bool flipped = false;
    if (n < d) {
        std::swap(n, d);
        flipped = true;
    }
    auto mb = minimal_base_gt1(n, d);
    if (!mb) return std::nullopt;
    if (flipped) mb->exp = -mb->exp;
    return mb;
}

std::optional<Rat> exact_log_ratio(const Rat& x, const Rat& y) {
    if (x <= 0 || y <= 0 || y == 1)
        throw Error("exact_log_ratio: requires x, y > 0 and y != 1");
    if (x == 1) return Rat(0);
    auto bx = minimal_base(x);
    auto by = minimal_base(y);
    if (!bx || !by) return std::nullopt;
    if (bx->base_num != by->base_num || bx->base_den != by->base_den)
        return std::nullopt;
    return make_rat(BigInt(bx->exp), BigInt(by->exp));
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit inputs.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    u64 c = 1;
    while (true) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            u64 diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            d = std::gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
        ++c;
    }
}

void factor_into(u64 n, std::vector<u64>& out) {
    while (n > 1) {
        if (is_prime(n)) {
            out.push_back(n);
            return;
        }
        u64 d = pollard_rho(n);
        factor_into(d, out);
        n /= d;
    }
}

}  // namespace

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<u64> out;
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace tmset
