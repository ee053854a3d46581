#include "tmset/odometer.hpp"

#include <utility>

namespace tmset {

Scale::Scale(std::vector<std::uint64_t> q) {
    if (q.empty()) throw Error("scale: needs at least one base");
    auto data = std::make_shared<Data>();
    data->p.reserve(q.size() + 1);
    data->p.emplace_back(1);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] < 2)
            throw Error("scale: base q_" + std::to_string(i + 1) +
                        " must be >= 2");
        if (q[i] > (std::uint64_t{1} << 62))
            throw Error("scale: base q_" + std::to_string(i + 1) +
                        " exceeds 2^62");
        data->p.push_back(data->p.back() *
                          BigInt(static_cast<unsigned long>(q[i])));
    }
    data->q = std::move(q);
    d_ = std::move(data);
}

std::uint64_t Scale::q(int level) const {
    if (level < 1 || level > depth())
        throw Error("scale: level " + std::to_string(level) + " out of range");
    return d_->q[level - 1];
}

const BigInt& Scale::p(int level) const {
    if (level < 0 || level > depth())
        throw Error("scale: level " + std::to_string(level) + " out of range");
    return d_->p[level];
}

bool Scale::same(const Scale& o) const {
    return d_ == o.d_ || d_->q == o.d_->q;
}

OdometerPoint zero_point(const Scale& s) {
    return {s, std::vector<std::uint64_t>(s.depth(), 0)};
}

OdometerPoint add(const OdometerPoint& a, const OdometerPoint& b) {
    if (!a.scale.same(b.scale) || a.digits.size() != b.digits.size())
        throw Error("add: scale or depth mismatch");
    OdometerPoint out{a.scale, std::vector<std::uint64_t>(a.digits.size())};
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < a.digits.size(); ++i) {
        const std::uint64_t q = a.scale.q(static_cast<int>(i) + 1);
        if (a.digits[i] >= q || b.digits[i] >= q)
            throw Error("add: digit out of bounds at level " +
                        std::to_string(i + 1));
        // q <= 2^63, so the sum fits without overflow.
        std::uint64_t sum = a.digits[i] + b.digits[i] + carry;
        carry = sum >= q ? 1 : 0;
        out.digits[i] = carry ? sum - q : sum;
    }
    return out;  // carry past depth L is dropped: exact mod p_L
}

OdometerPoint star(const Scale& s, const BigInt& n) {
    const int L = s.depth();
    return {s, digits_of(s, floor_mod(n, s.p(L)), L)};
}

BigInt k_of(const Scale& s, std::span<const std::uint64_t> digits) {
    if (static_cast<int>(digits.size()) > s.depth())
        throw Error("k_of: more digits than scale depth");
    BigInt k = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const int level = static_cast<int>(i) + 1;
        if (digits[i] >= s.q(level))
            throw Error("k_of: digit " + std::to_string(digits[i]) +
                        " out of bounds at level " + std::to_string(level));
        k += BigInt(static_cast<unsigned long>(digits[i])) * s.p(level - 1);
    }
    return k;
}

std::vector<std::uint64_t> digits_of(const Scale& s, const BigInt& k,
                                     int level) {
    if (level < 0 || level > s.depth())
        throw Error("digits_of: level out of range");
    if (k < 0 || k >= s.p(level))
        throw Error("digits_of: k outside [0, p_" + std::to_string(level) +
                    ")");
    std::vector<std::uint64_t> digits(level);
    BigInt rest = k;
    for (int i = 1; i <= level; ++i) {
        const BigInt q(static_cast<unsigned long>(s.q(i)));
        BigInt digit;
        mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(),
                    q.get_mpz_t());
        digits[i - 1] = digit.get_ui();
    }
    return digits;
}

Metric Metric::canonical() { return Metric{}; }

Metric Metric::custom(std::vector<Rat> diameters) {
    if (diameters.empty()) throw Error("metric: empty diameter table");
    for (std::size_t i = 0; i < diameters.size(); ++i) {
        if (diameters[i] <= 0)
            throw Error("metric: diameters must be positive");
        if (i > 0 && diameters[i] >= diameters[i - 1])
            throw Error("metric: diameters must be strictly decreasing");
    }
    Metric m;
    m.canonical_ = false;
    m.d_ = std::move(diameters);
    return m;
}

Rat Metric::diameter(const Scale& s, int level) const {
    if (canonical_) {
        if (level < 0 || level >= s.depth())
            throw Error("metric: canonical diameter needs p_" +
                        std::to_string(level + 1) + " beyond scale depth");
        return make_rat(1, s.p(level + 1));
    }
    if (level < 1 || level > static_cast<int>(d_.size()))
        throw Error("metric: no custom diameter for level " +
                    std::to_string(level));
    return d_[level - 1];
}

}  // namespace tmset
