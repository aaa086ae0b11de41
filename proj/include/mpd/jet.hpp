// Exploratory probe of the degree-3 term of the jet complex of order p^m.
//
// Degree 1 is free on the exponents 0 < |I| <= p^m.  For every I with
// p^m < |I| <= 2p^m a splitting I = A(I) + B(I) with a unit structure
// constant lets one eliminate exactly one tensor pair per such I, giving a
// basis of the degree-2 term (omega2_basis certifies this by elimination).
// For degree 3 the analogous elimination is an OPEN PROBLEM: omega3_probe
// builds the published generator and relation displays literally, runs
// unit-pivot elimination, and reports what happens — generator counts,
// pivots found, residual generators, the two known obstructions, and cycles
// in the dependency graph of the right-slot indices.  It asserts no theorem
// and emits no verdict.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mpd/arith.hpp"

namespace mpd {

// Exponents of the degree-1 generators: 0 < |I| <= p^m, ascending weight,
// enumeration order of multiindices_of_weight within a weight.
std::vector<MultiIndex> omega1_exponents(const PParams& par);

// The indices that force a relation: p^m < |I| <= 2p^m, same ordering.
std::vector<MultiIndex> qualifying_indices(const PParams& par);

// One splitting I = A(I) + B(I) per qualifying index.  Admissible A: both
// halves are degree-1 exponents (0 < |A|, |I - A| <= p^m) and the structure
// constant qbinom(I, A) is a unit mod p.
struct SplittingChoice {
    std::map<MultiIndex, std::pair<MultiIndex, MultiIndex>> split;

    const std::pair<MultiIndex, MultiIndex>* find(const MultiIndex& I) const;
    // True when W = B(I) for some qualifying I.
    bool is_b_image(const MultiIndex& W) const;
    // True when the pair (X, Y) is the chosen splitting of X + Y.
    bool is_excluded_pair(const MultiIndex& X, const MultiIndex& Y) const;
};

// Lexicographically smallest admissible A per qualifying I; throws
// NoUnitSplitting when none exists (that would contradict the published
// existence statement, so it is reported loudly, never swallowed).
SplittingChoice find_splittings(const PParams& par);

// Degree-2 presentation: generators are the pairs (U, V) of degree-1
// exponents; one relation per qualifying I expresses the excluded pair
// (A(I), B(I)) through the rest with a unit pivot.
struct Omega2Basis {
    std::vector<std::pair<MultiIndex, MultiIndex>> pairs;     // retained basis
    std::vector<std::pair<MultiIndex, MultiIndex>> excluded;  // per qualifying I
    std::int64_t pair_count = 0;       // generators before exclusion
    std::int64_t relation_rank = 0;    // unit pivots of the relation matrix (Z/p^N)
    bool unit_pivots = false;          // each relation: unit at its own excluded pair
    bool diagonal_on_excluded = false; // and zero at every other excluded pair

    // The two structural facts together certify that eliminating one pair
    // per relation is exact, i.e. the retained pairs form a basis.
    bool certificate() const { return unit_pivots && diagonal_on_excluded; }
};

Omega2Basis omega2_basis(const PParams& par, const SplittingChoice& choice);

// Everything omega3_probe measures.  residual_generators counts the columns
// (stated generators plus any non-generator triples the literal relation
// display references) left after removing one per unit pivot; the probe
// never interprets that number as a freeness verdict.
struct FreenessReport {
    PParams par;
    std::int64_t window = 0;
    SplittingChoice choice;

    std::int64_t generator_count = 0;       // stated generating set, within window
    std::int64_t extra_column_count = 0;    // non-generator triples referenced
    std::int64_t relation_count = 0;
    std::int64_t empty_relation_count = 0;  // relations with no surviving term
    std::int64_t dropped_term_count = 0;    // display terms with out-of-range slots
    std::int64_t eliminated_count = 0;      // unit pivots over Z/p^N
    std::int64_t eliminated_count_mod_p = 0;
    std::int64_t residual_generators = 0;

    // First published obstruction: a relation with terms but no unit
    // coefficient anywhere in its first sum offers no elimination pivot.
    bool obstruction_all_nonunit = false;
    std::int64_t all_nonunit_relation_count = 0;
    // Second published obstruction: a second-sum term whose right slot falls
    // back into the B-image, so eliminations feed each other.
    bool obstruction_b_reentry = false;
    std::int64_t reentry_term_count = 0;

    std::vector<std::vector<std::string>> b_cycles;  // elementary cycles, lex-rooted
    bool b_cycles_truncated = false;

    // Deterministic ordered JSON (schema "jet-omega3-probe/1").
    std::string to_json() const;
};

// Builds the literal generator and relation displays for the degree-3 term
// (total weight |U|+|V|+|W| <= window), eliminates with unit pivots over
// Z/p and Z/p^N, and reports.  Deterministic given (par, choice, window).
FreenessReport omega3_probe(const PParams& par, const SplittingChoice& choice,
                            std::int64_t window);

// Convenience: the full window 3*p^m.
FreenessReport omega3_probe(const PParams& par, const SplittingChoice& choice);

}  // namespace mpd
