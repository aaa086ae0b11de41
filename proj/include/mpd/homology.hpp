// Based cochain complexes over Z/p^N and their homology.
//
// A BasedComplex stores, per degree, an ordered basis of labeled generators
// (each with a weight) and the differential as a dense matrix (rows = target
// basis, cols = source basis).  Differentials preserve weight, so homology
// decomposes into independent (degree, weight) blocks; each block is computed
// from two Smith normal forms: one for the outgoing differential (kernel
// generators with their p-power orders) and one for the presentation of the
// block homology as a cokernel.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpd/matrix.hpp"

namespace mpd {

struct BasisLabel {
    std::string name;
    std::int64_t weight = 0;
    bool operator==(const BasisLabel& o) const {
        return name == o.name && weight == o.weight;
    }
};

struct BasedComplex {
    Zq ring;
    std::int64_t d_min = 0;
    std::vector<std::vector<BasisLabel>> bases;  // degrees d_min .. d_min+len-1
    std::vector<Mat> diffs;                      // diffs[k]: degree k -> k+1 (relative)

    std::int64_t degree_count() const { return static_cast<std::int64_t>(bases.size()); }
    std::int64_t d_max() const { return d_min + degree_count() - 1; }
    std::int64_t dim(std::int64_t d) const;
    const std::vector<BasisLabel>* basis(std::int64_t d) const;
    // Differential out of degree d, or nullptr when absent/zero-shaped.
    const Mat* diff_from(std::int64_t d) const;

    // Shape checks, d o d == 0, and weight preservation; throws NotAComplex.
    void validate() const;
};

struct DegreeSummary {
    std::int64_t free_rank = 0;           // number of Z/p^N summands
    std::vector<std::int64_t> torsion;    // exponents e with 0 < e < N, ascending
    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const DegreeSummary& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

struct HomologySummary {
    std::map<std::int64_t, DegreeSummary> by_degree;
    std::map<std::pair<std::int64_t, std::int64_t>, DegreeSummary> by_degree_weight;
    bool all_trivial() const;
};

HomologySummary homology(const BasedComplex& C, int threads = 1);

// Reduce every matrix mod p^{N'}; requires 1 <= N' <= N.
BasedComplex base_change(const BasedComplex& C, std::int64_t new_exp);

// A degree-preserving map of complexes; mats[k] sends source degree
// d_min_src + k into the same absolute degree of the target.
struct ComplexMap {
    BasedComplex source;
    BasedComplex target;
    std::vector<Mat> mats;

    const Mat* mat_at(std::int64_t d) const;  // absolute degree
    // Shape/ring checks (ParamMismatch) and commuting with differentials
    // (NotChainMap).  Weight preservation is NOT required of maps — the
    // box-basis change mixes weights; cone() detects that and falls back to
    // a single weight block.
    void validate() const;
};

// Mapping cone; degree d holds source degree d+1 plus target degree d.
BasedComplex cone(const ComplexMap& f);

// Validates f, then tests acyclicity of the cone.
std::pair<bool, HomologySummary> is_quasi_iso(const ComplexMap& f, int threads = 1);

// Tensor product with the Koszul sign; index[k][t] = (dc, dd, i, j) locating
// basis vector t of total degree d_min+k as (C-degree dc basis i) (x)
// (D-degree dd basis j).
struct TensorProduct {
    BasedComplex cx;
    std::vector<std::vector<std::array<std::int64_t, 4>>> index;
};

TensorProduct tensor_product(const BasedComplex& C, const BasedComplex& D,
                             const std::string& sep = "*");

// Direct sum with label prefixes; offsets[s][k] = column offset of summand s
// within degree d_min+k of the sum.
struct DirectSum {
    BasedComplex cx;
    std::vector<std::vector<std::int64_t>> offsets;
};

DirectSum direct_sum(const std::vector<BasedComplex>& parts,
                     const std::vector<std::string>& prefixes);

}  // namespace mpd
