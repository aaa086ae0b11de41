// Transport automorphism on two-slot divided-power windows and its
// compatibility checks.
//
// The map eps re-expresses the right-hand slot of a grade-2 word against
// coordinates re-based at the far end of the word:
//
//   eps([0, I]) = sum_{0<=V<=I} qbinom(I, V) (-1)^{|I-V|} [V, I-V],
//
// and a nonzero left slot transports by merging into the right-hand output
// slot (structure constant mbinom).  eps preserves weight, restricts to the
// identity after discarding words with a positive-weight right slot, and is
// invertible on every window; the inverse is the unsigned re-expansion that
// merges into the left-hand output slot.
//
// Two compatibility statements are exposed as checks:
//   * verify_cocycle: the three pullbacks of eps to the grade-3 window (the
//     carried factor lands in the left scalar slot, the middle scalar slot,
//     or is comultiplied into both, mirroring the inner face maps) compose
//     as eps02 = eps01 . eps12, exactly over Z/p^N.
//   * verify_horizontality: eps commutes with the degree-zero augmentation
//     embedding once coefficients are taken in truncated polynomials; the
//     right-hand copy of a base variable t expands as t - tau against the
//     left-based coordinates.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpd/arith.hpp"
#include "mpd/dpcore.hpp"
#include "mpd/matrix.hpp"

namespace mpd {

// A weight-windowed linear map on grade-2 words; columns follow `words`.
struct StratMatrix {
    PParams par;
    std::int64_t w_max = 0;
    std::vector<TensorWord> words;  // canonical order from DpAlg::all_words(2)
    Mat mat;

    // Position of a word in `words`, or -1 when absent.
    std::int64_t index_of(const TensorWord& w) const;
};

// The transport automorphism on all grade-2 words of weight <= w_max.
StratMatrix stratification_eps(const PParams& par, std::int64_t w_max);

// Unsigned re-expansion [B, X] -> sum_W qbinom(B, W) mbinom-merge [W+X, B-W];
// exact two-sided inverse of stratification_eps on the same window.
StratMatrix stratification_eps_inverse(const PParams& par, std::int64_t w_max);

// Weight preservation of every column, plus the augmentation axiom: on each
// column with zero left slot, the only output word with zero right slot is
// the input's mirror with coefficient 1.
bool strat_axioms_hold(const StratMatrix& eps);

// Outcome of a two-path comparison; on failure carries the first failing
// basis element and both path values, rendered for the JSON report.
struct StratCheck {
    bool ok = true;
    std::string failing_basis;
    std::string lhs;
    std::string rhs;
};

// First column where A and B differ, rendered against `basis`; ok when none.
StratCheck first_column_mismatch(const Zq& R, const Mat& A, const Mat& B,
                                 const std::vector<TensorWord>& basis);

// Composition identity of the three grade-3 pullbacks of eps on the window.
StratCheck verify_cocycle(const PParams& par, std::int64_t w_max);

// Commutation of eps with the augmentation embedding over truncated
// polynomial coefficients.  Requires w_max >= n * (p^m - 1) so that no term
// of the comparison is truncated away.
StratCheck verify_horizontality(const PParams& par, std::int64_t w_max);

// Plain-power recombination check in a one-slot algebra with polynomial
// coefficients: sum_J binom(L,J) (t x 1)^{L-J} (1 x t - t x 1)^{J} equals
// (1 x t)^{L}, with every power computed by repeated slot multiplication.
bool poly_power_recombination(const PParams& par, const MultiIndex& L);

}  // namespace mpd
