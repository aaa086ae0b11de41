// Arithmetic in Z/p^N with canonical uint64 residues.  Products go through
// unsigned 128-bit intermediates, so the modulus must stay below 2^62
// (enforced by PParams::validate).
#pragma once

#include <cstdint>

#include "mpd/arith.hpp"
#include "mpd/errors.hpp"

namespace mpd {

struct Zq {
    std::uint64_t p = 2;
    std::int64_t big_n = 1;
    std::uint64_t q = 2;  // p^N

    Zq() = default;
    Zq(std::uint64_t prime, std::int64_t exponent);
    static Zq from(const PParams& par) { return Zq(static_cast<std::uint64_t>(par.p), par.big_n); }

    std::uint64_t reduce(const BigInt& v) const { return reduce_mod(v, q); }
    std::uint64_t reduce_int(std::int64_t v) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : q - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

    bool is_unit(std::uint64_t a) const { return a % p != 0; }
    // p-adic valuation of the canonical representative; val(0) = N.
    std::int64_t val(std::uint64_t a) const;
    // Inverse of a unit (extended Euclid); PreconditionViolation otherwise.
    std::uint64_t inv(std::uint64_t a) const;
    // Exact division by b = unit * p^v, defined when val(a) >= val(b).
    std::uint64_t div_exact(std::uint64_t a, std::uint64_t b) const;

    bool operator==(const Zq& o) const { return p == o.p && big_n == o.big_n && q == o.q; }
};

// Residue of a p-locally integral rational: numerator * denominator^{-1}
// mod p^N.  Throws DivisibilityViolation when the reduced denominator is
// divisible by p (the value then has no residue in Z/p^N).
std::uint64_t rat_reduce(const BigRat& r, const Zq& ring);

}  // namespace mpd
