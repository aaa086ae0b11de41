// Exact combinatorics for divided powers of level m: parameter validation,
// multi-indices, and the three binomial families (classical, level-m, and
// their quotient).  Everything here is exact big-integer / big-rational
// arithmetic; callers reduce into Z/p^N at the linear-algebra boundary
// (rat_reduce in ring.hpp handles the p-locally integral rationals).
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "mpd/errors.hpp"

namespace mpd {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Admissible parameter ranges.  p_pow_cap is the joint bound on p^N imposed
// by the uint64 residue representation (128-bit products need p^N < 2^62).
struct Bounds {
    std::int64_t p_max = 97;
    std::int64_t m_max = 4;
    std::int64_t n_max = 6;
    std::int64_t big_n_max = 16;
    std::int64_t weight_max = 4096;
};

// Parameter tuple (p, m, n, N): prime p, divided-power level m, number of
// coordinates n, modulus exponent N.  validate() throws ConfigError.
struct PParams {
    std::int64_t p = 2;
    std::int64_t m = 0;
    std::int64_t n = 1;
    std::int64_t big_n = 1;  // N, the modulus exponent

    void validate(const Bounds& b = Bounds{}) const;
    std::uint64_t pm() const;        // p^m
    std::uint64_t modulus() const;   // p^N
};

bool is_prime(std::int64_t p);

// Multi-indices are componentwise-natural exponent vectors of length n.
using MultiIndex = std::vector<std::int64_t>;

std::int64_t weight(const MultiIndex& I);
bool leq(const MultiIndex& J, const MultiIndex& I);      // componentwise J <= I
MultiIndex add(const MultiIndex& I, const MultiIndex& J);
MultiIndex sub(const MultiIndex& I, const MultiIndex& J);  // requires J <= I
MultiIndex unit_index(std::int64_t n, std::int64_t j);     // 1_j, 0-based j
bool is_zero(const MultiIndex& I);

// All multi-indices of length n and exact weight w, lexicographically.
std::vector<MultiIndex> multiindices_of_weight(std::int64_t n, std::int64_t w);
// All multi-indices of length n and weight <= w, ordered by (weight, lex).
std::vector<MultiIndex> multiindices_up_to(std::int64_t n, std::int64_t w);

// Read-only factorial memo; grows on demand (thread-safe).  ensure_factorials
// pre-sizes the table so hot loops never contend.
void ensure_factorials(std::int64_t upto);
BigInt factorial(std::int64_t k);

// Classical binomial coefficient k! / (k'! (k-k')!).  Throws
// ComponentOutOfRange unless 0 <= k' <= k.
BigInt binom_s(std::int64_t k, std::int64_t kp);

// Level-m binomial: with q = floor(k/p^m), q' = floor(k'/p^m),
// q'' = floor((k-k')/p^m), returns q! / (q'! q''!).  The carry identity
// q in {q'+q'', q'+q''+1} guarantees this is a positive integer.
BigInt mbinom_s(std::int64_t k, std::int64_t kp, std::int64_t pm);

// Quotiented binomial  binom_s / mbinom_s, as an exact rational.  It is an
// integer at the prime dividing pm — i.e. the reduced denominator is prime
// to p — but need not be a rational integer (20/6 at k=6, kp=3, pm=2).
// That local integrality is a checked postcondition: the call throws
// DivisibilityViolation if the reduced denominator is divisible by p.
// For pm == 1 the quotient is literally 1 and no primality enters.
BigRat qbinom_s(std::int64_t k, std::int64_t kp, std::int64_t pm);

// Componentwise products over a multi-index pair.
BigInt binom(const MultiIndex& I, const MultiIndex& J);
BigInt mbinom(const MultiIndex& I, const MultiIndex& J, std::int64_t pm);
BigRat qbinom(const MultiIndex& I, const MultiIndex& J, std::int64_t pm);
BigRat qbinom(const MultiIndex& I, const MultiIndex& J, const PParams& par);

// Smallest prime factor of pm (the p with pm == p^m when pm > 1); returns 0
// for pm == 1 where no prime is determined.
std::int64_t prime_root(std::int64_t pm);

// True iff qbinom(i, p^m) == 1 mod p; requires i >= p^m.  This is the unit
// statement that drives every invertibility argument downstream.  Evaluated
// p-locally: numerator == denominator mod p after clearing the fraction.
bool check_unit_lemma(std::int64_t i, const PParams& par);

// p-adic valuation of k! by Legendre's sum (test cross-check helper).
std::int64_t legendre_valuation(std::int64_t k, std::int64_t p);

// Canonical residue of an exact integer mod q (handles negatives).
std::uint64_t reduce_mod(const BigInt& v, std::uint64_t q);

}  // namespace mpd
