// Level-raising comparison: the pullback along the s-fold relative Frobenius
// from the level-m linearized complex into the level-(m+s) one, and the
// descent map phi built from p^{sn} digit-indexed copies of the source.
//
// Everything here works mod p only (big_n == 1): the descent lemma needs the
// base to kill p, and with N = 1 every differential coefficient qbinom(k, p^mu)
// reduces to 1, which is exactly why the pullback commutes with both
// differentials (qbinom at level m and at level m+s agree mod p).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpd/arith.hpp"
#include "mpd/homology.hpp"

namespace mpd {

// Source parameters at level m plus the Frobenius iteration count s >= 1;
// the target lives at level m+s with the same p and n.
struct FrobParams {
    PParams base;        // level-m side; base.big_n must be 1
    std::int64_t s = 1;  // number of Frobenius iterations

    PParams target() const;    // same p/n, level m+s, N = 1
    std::int64_t ps() const;   // p^s
    // Throws LevelMismatch when big_n != 1 or s < 1; ConfigError when either
    // the base or the target parameter tuple leaves the admissible bounds.
    void validate() const;
};

// Pullback t'[I]^w[S] -> t[p^s*I]^w[S] (coefficient 1 on every basis form;
// the generator classes of the n coordinates map indexwise).  Source is the
// level-m window of weights <= w_max with its labels regraded by the factor
// p^s, target the level-(m+s) window of weights <= p^s*w_max, so the map is
// weight-preserving on labels and multiplies the native weight by exactly
// p^s.  The result validates as a chain map.
ComplexMap frobenius_pullback(const FrobParams& fp, std::int64_t w_max);

// Descent comparison map.  Source: direct sum of one level-m window per
// digit vector J with 0 <= J_i <= p^s - 1 (p^{sn} copies; copy J keeps
// weights <= floor((p^s*w_max - |J|)/p^s) and is regraded to p^s*w + |J| so
// every per-weight block of the cone pairs completely).  Component J sends
// t'[I]^w[S] to t[J + p^s*I]^w[S]: in degree 0 this is multiplication by
// tau^J after the pullback, and the same multiplication acts in every form
// degree (the merge coefficient is exactly 1 because the digit part never
// carries), which is what makes phi an honest chain map.  Component J = 0 is
// frobenius_pullback on the nose.  Restricted to cohomology in degree 0 the
// map is the digit bijection (J, K) -> J + p^s*K onto the level-(m+s) box.
ComplexMap phi_map(const FrobParams& fp, std::int64_t w_max);

// One grid point for the descent check: parameters plus the source window.
struct FrobPoint {
    FrobParams fp;
    std::int64_t w_max = 8;
};

// Outcome of one descent verification: whether phi validates as a chain map,
// whether its cone is acyclic, and a human-readable diagnostic for the first
// failure (empty on pass).
struct FrobPointResult {
    FrobPoint point;
    bool chain_map_ok = false;
    bool cone_acyclic = false;
    std::string detail;

    bool pass() const { return chain_map_ok && cone_acyclic; }
};

// Runs phi_map + cone acyclicity on every grid point; never throws for
// mathematical failures (they are reported per point), only for malformed
// parameters.
std::vector<FrobPointResult> verify_frobenius_descent(const std::vector<FrobPoint>& grid,
                                                      int threads = 1);

// The standard verification grid: (p, m, s, n) in {(2,0,1,1), (3,0,1,1),
// (2,1,1,1)} with source weights <= 8.
std::vector<FrobPoint> frob_default_grid();

}  // namespace mpd
