#include "mpd/ring.hpp"

#include <string>

namespace mpd {

Zq::Zq(std::uint64_t prime, std::int64_t exponent) : p(prime), big_n(exponent) {
    if (exponent < 1) throw PreconditionViolation("modulus exponent must be >= 1");
    q = 1;
    for (std::int64_t i = 0; i < exponent; ++i) {
        if (q > (std::uint64_t(1) << 62) / p)
            throw ConfigError("p^N must be < 2^62 for the residue representation");
        q *= p;
    }
}

std::uint64_t Zq::reduce_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(q);
    if (r < 0) r += static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(r);
}

std::uint64_t Zq::add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;  // no overflow: both < 2^62
    return s >= q ? s - q : s;
}

std::uint64_t Zq::sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + q - b;
}

std::uint64_t Zq::mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t Zq::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % q, base = a % q;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::int64_t Zq::val(std::uint64_t a) const {
    if (a == 0) return big_n;
    std::int64_t v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

std::uint64_t Zq::inv(std::uint64_t a) const {
    if (!is_unit(a))
        throw PreconditionViolation("attempted inverse of a non-unit residue");
    // Extended Euclid over the integers; gcd(a, q) = 1.
    std::int64_t r0 = static_cast<std::int64_t>(q), r1 = static_cast<std::int64_t>(a % q);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t k = r0 / r1;
        std::int64_t r2 = r0 - k * r1;
        std::int64_t s2 = s0 - k * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    std::int64_t inv = s0 % static_cast<std::int64_t>(q);
    if (inv < 0) inv += static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(inv);
}

std::uint64_t Zq::div_exact(std::uint64_t a, std::uint64_t b) const {
    if (b == 0) throw PreconditionViolation("division by zero residue");
    const std::int64_t vb = val(b);
    if (val(a) < vb)
        throw DivisibilityViolation("residue division is not exact");
    std::uint64_t pv = 1;
    for (std::int64_t i = 0; i < vb; ++i) pv *= p;
    // Canonical representatives of multiples of p^v are divisible by p^v.
    return mul(a / pv, inv(b / pv));
}

std::uint64_t rat_reduce(const BigRat& r, const Zq& ring) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den % ring.p == 0)
        throw DivisibilityViolation("rational has no residue: denominator divisible by p");
    return ring.mul(ring.reduce(num), ring.inv(ring.reduce(den)));
}

}  // namespace mpd
