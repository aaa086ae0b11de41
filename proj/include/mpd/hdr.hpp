// The exterior-algebra complex on n coordinates with divided-power
// coefficients of level m, its per-weight linearization, the box-basis
// augmentation maps (iota', beta, iota), the product isomorphism, and the
// quotient cross-validation against the cosimplicial construction.
#pragma once

#include <string>
#include <vector>

#include "mpd/dpcore.hpp"
#include "mpd/homology.hpp"

namespace mpd {

// One basis form: divided-power part t[I] wedged with the 1-form classes of
// the coordinates listed in S (strictly increasing, 0-based).  A degree-r
// form has |S| = r and weight |I| + r*p^m.
struct HdrForm {
    MultiIndex I;
    std::vector<std::int64_t> S;

    std::int64_t degree() const { return static_cast<std::int64_t>(S.size()); }
    std::int64_t weight(std::int64_t pm) const;
    std::string label() const;
};

// All strictly increasing r-subsets of {0..n-1}, lexicographically ordered.
std::vector<std::vector<std::int64_t>> subsets_of_size(std::int64_t n, std::int64_t r);

// All degree-r forms of exact weight w: outer loop over I (enumeration order
// of multiindices_of_weight), inner loop over S (lex order).
std::vector<HdrForm> hdr_forms(const PParams& par, std::int64_t r, std::int64_t w);

// Constant-coefficient avatar: term r free of rank C(n,r) with basis the
// wedge subsets at I = 0, zero differential, weight r*p^m.
BasedComplex build_hdr(const PParams& par);

// Linearized complex in a single weight w, degrees 0..n.  The differential
// sends t[I]^w[S] to the sum over coordinates j with i_j >= p^m and j not in
// S of  qbinom(i_j, p^m) * (-1)^{#{s in S : s < j}} * t[I - p^m e_j]^w[S+j].
BasedComplex build_lhdr(const PParams& par, std::int64_t w);

// Direct sum of build_lhdr over weights 0..w_max (weight-block-diagonal).
BasedComplex build_lhdr_upto(const PParams& par, std::int64_t w_max);

// Restriction to basis elements of weight <= w_max (legal because the
// differentials are weight-graded).  If kept is non-null it receives, per
// degree, the original positions of the surviving basis elements.
BasedComplex truncate_weight(const BasedComplex& C, std::int64_t w_max,
                             std::vector<std::vector<std::int64_t>>* kept = nullptr);

// The box basis: all I with 0 <= i_j <= p^m - 1, lex order; size p^{mn}.
std::vector<MultiIndex> basis_box(const PParams& par);

// Degree-0 complex on the box labels e[I], weight |I|.
BasedComplex augmentation_source(const PParams& par);

// Evaluation point: one residue per coordinate.
using EvalPoint = std::vector<std::uint64_t>;

// Change of basis on the box: column of e_I holds binom(I,J) * a^J at the
// row of e_{I-J}; unitriangular for the weight filtration, so invertible.
Mat beta(const PParams& par, const EvalPoint& a);

// Inclusion e_I -> t[I] into build_lhdr_upto(par, w_max) in degree 0; a
// chain map because every box index has all entries < p^m.
ComplexMap iota_prime(const PParams& par, std::int64_t w_max);

// iota = iota_prime ∘ beta^{-1}; not weight-homogeneous for a != 0.
ComplexMap iota(const PParams& par, const EvalPoint& a, std::int64_t w_max);

// Isomorphism from the (combined-weight <= w_max) tensor product of the two
// windowed complexes onto the (n + n')-coordinate windowed complex, sending
// (t[I]^w[S]) (x) (t[I']^w[S']) to t[I,I']^w[S ∪ (S'+n)] with coefficient 1
// (the shifted indices are already sorted above S, so no sign appears).
ComplexMap kunneth_iso(const PParams& px, const PParams& py, std::int64_t w_max);

// Cross-validation of degrees <= 2 against the cosimplicial construction:
// quotient the normalized word complex by the span of the one-slot words
// outside {p^m e_j} together with the differentials of those words, and
// check the result matches build_hdr: rank n at weight p^m in degree 1,
// rank C(n,2) at weight 2p^m in degree 2, no torsion, the square classes
// [p^m e_i, p^m e_i] and the anticommutators dying in the quotient, and the
// induced differential vanishing.  Requires w_cap >= 2p^m.
bool crosscheck_quotient(const PParams& par, std::int64_t w_cap);

// Position lookup by label within one degree of a complex.
std::int64_t position_of(const BasedComplex& C, std::int64_t degree, const std::string& label);

}  // namespace mpd
