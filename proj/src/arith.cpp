#include "mpd/arith.hpp"

#include <algorithm>
#include <mutex>
#include <string>

namespace mpd {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void PParams::validate(const Bounds& b) const {
    if (!is_prime(p) || p > b.p_max)
        throw ConfigError("p must be a prime <= " + std::to_string(b.p_max) +
                          ", got " + std::to_string(p));
    if (m < 0 || m > b.m_max)
        throw ConfigError("m out of range [0, " + std::to_string(b.m_max) + "]");
    if (n < 1 || n > b.n_max)
        throw ConfigError("n out of range [1, " + std::to_string(b.n_max) + "]");
    if (big_n < 1 || big_n > b.big_n_max)
        throw ConfigError("modulus exponent out of range [1, " +
                          std::to_string(b.big_n_max) + "]");
    // Joint representability bounds: p^m within the weight range and p^N
    // within the uint64-safe residue range.
    BigInt pmv = 1, modv = 1;
    for (std::int64_t i = 0; i < m; ++i) pmv *= p;
    for (std::int64_t i = 0; i < big_n; ++i) modv *= p;
    if (pmv > b.weight_max)
        throw ConfigError("p^m exceeds the supported weight range");
    if (modv >= (BigInt(1) << 62))
        throw ConfigError("p^N must be < 2^62 for the residue representation");
}

std::uint64_t PParams::pm() const {
    std::uint64_t r = 1;
    for (std::int64_t i = 0; i < m; ++i) r *= static_cast<std::uint64_t>(p);
    return r;
}

std::uint64_t PParams::modulus() const {
    std::uint64_t r = 1;
    for (std::int64_t i = 0; i < big_n; ++i) r *= static_cast<std::uint64_t>(p);
    return r;
}

std::int64_t weight(const MultiIndex& I) {
    std::int64_t w = 0;
    for (auto v : I) w += v;
    return w;
}

bool leq(const MultiIndex& J, const MultiIndex& I) {
    if (J.size() != I.size()) return false;
    for (std::size_t k = 0; k < I.size(); ++k)
        if (J[k] > I[k]) return false;
    return true;
}

MultiIndex add(const MultiIndex& I, const MultiIndex& J) {
    if (I.size() != J.size()) throw ComponentOutOfRange("multi-index length mismatch");
    MultiIndex r(I.size());
    for (std::size_t k = 0; k < I.size(); ++k) r[k] = I[k] + J[k];
    return r;
}

MultiIndex sub(const MultiIndex& I, const MultiIndex& J) {
    if (!leq(J, I)) throw ComponentOutOfRange("multi-index subtraction underflow");
    MultiIndex r(I.size());
    for (std::size_t k = 0; k < I.size(); ++k) r[k] = I[k] - J[k];
    return r;
}

MultiIndex unit_index(std::int64_t n, std::int64_t j) {
    if (j < 0 || j >= n) throw IndexOutOfRange("unit_index coordinate out of range");
    MultiIndex r(static_cast<std::size_t>(n), 0);
    r[static_cast<std::size_t>(j)] = 1;
    return r;
}

bool is_zero(const MultiIndex& I) {
    return std::all_of(I.begin(), I.end(), [](std::int64_t v) { return v == 0; });
}

static void enum_weight(std::int64_t n, std::int64_t w, MultiIndex& cur,
                        std::vector<MultiIndex>& out) {
    if (n == 1) {
        cur.push_back(w);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (std::int64_t v = 0; v <= w; ++v) {
        cur.push_back(v);
        enum_weight(n - 1, w - v, cur, out);
        cur.pop_back();
    }
}

std::vector<MultiIndex> multiindices_of_weight(std::int64_t n, std::int64_t w) {
    std::vector<MultiIndex> out;
    if (n < 1 || w < 0) return out;
    MultiIndex cur;
    enum_weight(n, w, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MultiIndex> multiindices_up_to(std::int64_t n, std::int64_t w) {
    std::vector<MultiIndex> out;
    for (std::int64_t v = 0; v <= w; ++v) {
        auto part = multiindices_of_weight(n, v);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

namespace {
std::mutex g_fact_mutex;
std::vector<BigInt> g_fact{BigInt(1)};  // g_fact[k] = k!
}  // namespace

void ensure_factorials(std::int64_t upto) {
    std::lock_guard<std::mutex> lock(g_fact_mutex);
    while (static_cast<std::int64_t>(g_fact.size()) <= upto)
        g_fact.push_back(g_fact.back() * static_cast<std::int64_t>(g_fact.size()));
}

BigInt factorial(std::int64_t k) {
    if (k < 0) throw ComponentOutOfRange("factorial of negative argument");
    {
        std::lock_guard<std::mutex> lock(g_fact_mutex);
        if (k < static_cast<std::int64_t>(g_fact.size())) return g_fact[k];
    }
    ensure_factorials(k);
    std::lock_guard<std::mutex> lock(g_fact_mutex);
    return g_fact[k];
}

BigInt binom_s(std::int64_t k, std::int64_t kp) {
    if (k < 0 || kp < 0 || kp > k)
        throw ComponentOutOfRange("binom requires 0 <= k' <= k");
    std::int64_t j = std::min(kp, k - kp);
    // Incremental product: exact at every step, and much faster than big
    // factorial division when k is large (the unit-lemma sweep hits k ~ 2000).
    BigInt r = 1;
    for (std::int64_t t = 1; t <= j; ++t) {
        r *= (k - j + t);
        r /= t;
    }
    return r;
}

BigInt mbinom_s(std::int64_t k, std::int64_t kp, std::int64_t pm) {
    if (pm < 1) throw PreconditionViolation("level modulus p^m must be >= 1");
    if (k < 0 || kp < 0 || kp > k)
        throw ComponentOutOfRange("mbinom requires 0 <= k' <= k");
    const std::int64_t q = k / pm, qp = kp / pm, qpp = (k - kp) / pm;
    if (q != qp + qpp && q != qp + qpp + 1)
        throw std::logic_error("level-m carry identity violated");
    return factorial(q) / (factorial(qp) * factorial(qpp));
}

std::int64_t prime_root(std::int64_t pm) {
    if (pm < 1) throw PreconditionViolation("level modulus p^m must be >= 1");
    if (pm == 1) return 0;
    for (std::int64_t d = 2; d * d <= pm; ++d)
        if (pm % d == 0) return d;
    return pm;
}

BigRat qbinom_s(std::int64_t k, std::int64_t kp, std::int64_t pm) {
    const BigRat r = BigRat(binom_s(k, kp), mbinom_s(k, kp, pm));
    const std::int64_t p = prime_root(pm);
    if (p != 0 && boost::multiprecision::denominator(r) % p == 0)
        throw DivisibilityViolation("qbinom denominator is not prime to p");
    return r;
}

BigInt binom(const MultiIndex& I, const MultiIndex& J) {
    if (I.size() != J.size()) throw ComponentOutOfRange("multi-index length mismatch");
    BigInt r = 1;
    for (std::size_t t = 0; t < I.size(); ++t) r *= binom_s(I[t], J[t]);
    return r;
}

BigInt mbinom(const MultiIndex& I, const MultiIndex& J, std::int64_t pm) {
    if (I.size() != J.size()) throw ComponentOutOfRange("multi-index length mismatch");
    BigInt r = 1;
    for (std::size_t t = 0; t < I.size(); ++t) r *= mbinom_s(I[t], J[t], pm);
    return r;
}

BigRat qbinom(const MultiIndex& I, const MultiIndex& J, std::int64_t pm) {
    if (I.size() != J.size()) throw ComponentOutOfRange("multi-index length mismatch");
    BigRat r = 1;
    for (std::size_t t = 0; t < I.size(); ++t) r *= qbinom_s(I[t], J[t], pm);
    return r;
}

BigRat qbinom(const MultiIndex& I, const MultiIndex& J, const PParams& par) {
    return qbinom(I, J, static_cast<std::int64_t>(par.pm()));
}

bool check_unit_lemma(std::int64_t i, const PParams& par) {
    const std::int64_t pm = static_cast<std::int64_t>(par.pm());
    if (i < pm)
        throw PreconditionViolation("unit statement requires i >= p^m");
    const BigRat q = qbinom_s(i, pm, pm);
    // q == 1 mod p with a p-unit denominator  <=>  num == den mod p.
    const BigInt diff = boost::multiprecision::numerator(q) -
                        boost::multiprecision::denominator(q);
    return diff % par.p == 0;
}

std::int64_t legendre_valuation(std::int64_t k, std::int64_t p) {
    std::int64_t v = 0;
    for (std::int64_t q = k / p; q > 0; q /= p) v += q;
    return v;
}

std::uint64_t reduce_mod(const BigInt& v, std::uint64_t q) {
    BigInt r = v % BigInt(q);
    if (r < 0) r += q;
    return r.convert_to<std::uint64_t>();
}

}  // namespace mpd
