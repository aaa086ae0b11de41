// Core algebra of level-m divided powers on tensor words.
//
// A grade-r word [V1, ..., Vr] denotes tau^{V1} (x) ... (x) tau^{Vr} read
// left to right, where tau^{V} is the level-m divided power monomial of
// multi-exponent V in n variables.  Conventions, fixed once and used by every
// module downstream:
//
//   * face i = 0 adjoins a unit factor on the RIGHT, face i = r+1 on the
//     LEFT; the inner face i (0 < i <= r) comultiplies slot r - i + 1
//     (1-based), sending tau^{V} there to sum_U qbinom(V, U) tau^{U} (x)
//     tau^{V-U} in slots (r-i+1, r-i+2).
//   * degeneracy i (0 <= i <= r-1) is the counit on slot r - i: the term
//     dies if that slot is nonzero, otherwise the slot is dropped.
//   * the simplicial identities hold verbatim for this indexing; tests check
//     them exhaustively on weight windows.
//   * the "coefficient" slot of the one-sided normalized complex is the LAST
//     slot; normalization constrains the other slots only.
//
// Coefficients live in Z/p^N.  Structure constants are computed exactly
// (BigInt) and reduced on entry.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mpd/arith.hpp"
#include "mpd/ring.hpp"

namespace mpd {

struct TensorWord {
    std::vector<MultiIndex> factors;

    std::int64_t grade() const { return static_cast<std::int64_t>(factors.size()); }
    std::int64_t total_weight() const;
    bool operator==(const TensorWord& o) const { return factors == o.factors; }
    // Canonical order: by (grade, weight, flattened lexicographic).
    bool operator<(const TensorWord& o) const;
    std::string str() const;  // e.g. "[2,0|1,1]" for two 2-variable slots
};

struct DPElement {
    std::int64_t grade = 0;
    std::int64_t n = 1;
    std::map<TensorWord, std::uint64_t> terms;  // nonzero canonical residues

    bool is_zero() const { return terms.empty(); }
    bool operator==(const DPElement& o) const {
        return grade == o.grade && n == o.n && terms == o.terms;
    }
};

// Inclusive cap on word weight; operations drop terms beyond it.
struct WeightWindow {
    std::int64_t w_max = 0;
};

// All sub-multi-indices 0 <= U <= V, lexicographic.
std::vector<MultiIndex> subindices(const MultiIndex& V);

// Operation context: parameters, residue ring, and the active window.
class DpAlg {
  public:
    DpAlg(const PParams& par, WeightWindow win);

    const PParams& params() const { return par_; }
    const Zq& ring() const { return ring_; }
    const WeightWindow& window() const { return win_; }

    DPElement zero(std::int64_t grade) const;
    DPElement monomial(const TensorWord& w, std::uint64_t coeff = 1) const;
    // x + c*y (grades and n must agree).
    DPElement axpy(const DPElement& x, std::uint64_t c, const DPElement& y) const;
    void add_term(DPElement& x, const TensorWord& w, std::uint64_t coeff) const;

    // Slotwise product of divided powers: structure constant
    // prod_slots mbinom(V_k + W_k, V_k).  Truncates to the window.
    DPElement dp_mul(const DPElement& x, const DPElement& y) const;

    // Substitution x_j -> c * x_j for all j:  tau^{I} -> c^{|I|} tau^{I}.
    DPElement dp_scale_substitute(std::uint64_t c, const DPElement& x) const;

    // Addition expansion into two slots: sum_{0<=J<=I} qbinom(I,J) [J, I-J].
    DPElement dp_add_expand(const MultiIndex& I) const;

    // Cosimplicial structure maps; r is the grade of x.
    DPElement face_map(std::int64_t r, std::int64_t i, const DPElement& x) const;
    DPElement degeneracy_map(std::int64_t r, std::int64_t i, const DPElement& x) const;

    // Alternating sum of all faces: grade r -> r+1.
    DPElement dga_differential(std::int64_t r, const DPElement& x) const;

    // One-sided differential of the normalized L-complex: input grade r+1,
    // output grade r+2, sum_{i=1}^{r+2} (-1)^{i+1} face_i (face 0 omitted).
    DPElement l_differential(std::int64_t r, const DPElement& x) const;

    // Grade-r words of weight <= window with every slot nonzero, canonical
    // order (basis of the normalized part).
    std::vector<TensorWord> normalized_basis(std::int64_t r) const;

    // Grade-(r+1) words with slots 1..r nonzero and a free last slot (basis
    // of the one-sided normalized complex in degree r).
    std::vector<TensorWord> l_normalized_basis(std::int64_t r) const;

    // All grade-r words of weight <= window (zero slots allowed).
    std::vector<TensorWord> all_words(std::int64_t r) const;

    std::uint64_t qbinom_mod(const MultiIndex& I, const MultiIndex& J) const;
    std::uint64_t mbinom_mod(const MultiIndex& I, const MultiIndex& J) const;

  private:
    PParams par_;
    Zq ring_;
    WeightWindow win_;

    void check_element(const DPElement& x, std::int64_t grade) const;
    void enum_words(std::int64_t r, std::int64_t w_max, bool allow_zero_slot,
                    std::vector<MultiIndex>& cur, std::vector<TensorWord>& out) const;
};

}  // namespace mpd
