#include "mpd/jet.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mpd/errors.hpp"
#include "mpd/matrix.hpp"
#include "mpd/ring.hpp"

namespace mpd {

namespace {

std::string mi_str(const MultiIndex& I) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < I.size(); ++i) os << (i ? "," : "") << I[i];
    os << ']';
    return os.str();
}

std::string triple_str(const MultiIndex& u, const MultiIndex& v, const MultiIndex& w) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < u.size(); ++i) os << (i ? "," : "") << u[i];
    os << '|';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << '|';
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << ']';
    return os.str();
}

// Lexicographically ascending walk over all A with 0 <= A <= I
// componentwise; returns false once the walk is exhausted.
bool lex_next(MultiIndex& A, const MultiIndex& bound) {
    for (std::size_t i = A.size(); i-- > 0;) {
        if (A[i] < bound[i]) {
            ++A[i];
            for (std::size_t j = i + 1; j < A.size(); ++j) A[j] = 0;
            return true;
        }
    }
    return false;
}

bool unit_mod_p(const BigRat& c, const Zq& mod_p) { return rat_reduce(c, mod_p) != 0; }

std::int64_t unit_pivot_count(const Mat& M, const Zq& ring) {
    if (M.rows == 0 || M.cols == 0) return 0;
    std::int64_t units = 0;
    for (std::int64_t e : snf_local(M, ring).exponents)
        if (e == 0) ++units;
    return units;
}

}  // namespace

std::vector<MultiIndex> omega1_exponents(const PParams& par) {
    par.validate();
    const std::int64_t pm = static_cast<std::int64_t>(par.pm());
    std::vector<MultiIndex> out;
    for (std::int64_t w = 1; w <= pm; ++w)
        for (MultiIndex& I : multiindices_of_weight(par.n, w)) out.push_back(std::move(I));
    return out;
}

std::vector<MultiIndex> qualifying_indices(const PParams& par) {
    par.validate();
    const std::int64_t pm = static_cast<std::int64_t>(par.pm());
    std::vector<MultiIndex> out;
    for (std::int64_t w = pm + 1; w <= 2 * pm; ++w)
        for (MultiIndex& I : multiindices_of_weight(par.n, w)) out.push_back(std::move(I));
    return out;
}

const std::pair<MultiIndex, MultiIndex>* SplittingChoice::find(const MultiIndex& I) const {
    auto it = split.find(I);
    return it == split.end() ? nullptr : &it->second;
}

bool SplittingChoice::is_b_image(const MultiIndex& W) const {
    for (const auto& [i, ab] : split)
        if (ab.second == W) return true;
    return false;
}

bool SplittingChoice::is_excluded_pair(const MultiIndex& X, const MultiIndex& Y) const {
    const auto* ab = find(add(X, Y));
    return ab && ab->first == X;
}

SplittingChoice find_splittings(const PParams& par) {
    par.validate();
    const std::int64_t pm = static_cast<std::int64_t>(par.pm());
    const Zq mod_p(static_cast<std::uint64_t>(par.p), 1);
    SplittingChoice choice;
    for (const MultiIndex& I : qualifying_indices(par)) {
        MultiIndex A(I.size(), 0);
        bool found = false;
        while (lex_next(A, I)) {
            if (A == I) continue;
            if (weight(A) > pm || weight(I) - weight(A) > pm) continue;
            if (!unit_mod_p(qbinom(I, A, pm), mod_p)) continue;
            choice.split[I] = {A, sub(I, A)};
            found = true;
            break;
        }
        if (!found)
            throw NoUnitSplitting("no unit splitting for " + mi_str(I) +
                                  " at p = " + std::to_string(par.p) +
                                  ", m = " + std::to_string(par.m));
    }
    return choice;
}

Omega2Basis omega2_basis(const PParams& par, const SplittingChoice& choice) {
    par.validate();
    const std::int64_t pm = static_cast<std::int64_t>(par.pm());
    const Zq ring = Zq::from(par);
    const std::vector<MultiIndex> gens1 = omega1_exponents(par);
    const std::vector<MultiIndex> quals = qualifying_indices(par);

    std::map<std::pair<MultiIndex, MultiIndex>, std::int64_t> col_of;
    std::vector<std::pair<MultiIndex, MultiIndex>> all_pairs;
    for (const MultiIndex& U : gens1)
        for (const MultiIndex& V : gens1) {
            col_of[{U, V}] = static_cast<std::int64_t>(all_pairs.size());
            all_pairs.emplace_back(U, V);
        }

    Omega2Basis out;
    out.pair_count = static_cast<std::int64_t>(all_pairs.size());
    for (const MultiIndex& I : quals) {
        const auto* ab = choice.find(I);
        if (!ab) throw PreconditionViolation("splitting choice is missing " + mi_str(I));
        out.excluded.push_back(*ab);
    }

    // One relation per qualifying I: sum over the admissible interior
    // splittings S of the structure constants qbinom(I, S) at the pair
    // (I - S, S).
    Mat M(static_cast<std::int64_t>(quals.size()), out.pair_count);
    for (std::size_t r = 0; r < quals.size(); ++r) {
        const MultiIndex& I = quals[r];
        MultiIndex S(I.size(), 0);
        while (lex_next(S, I)) {
            if (S == I) continue;
            if (weight(S) > pm || weight(I) - weight(S) > pm) continue;
            const std::int64_t c = col_of.at({sub(I, S), S});
            M.at(static_cast<std::int64_t>(r), c) =
                ring.add(M.at(static_cast<std::int64_t>(r), c),
                         rat_reduce(qbinom(I, S, pm), ring));
        }
    }

    out.unit_pivots = true;
    out.diagonal_on_excluded = true;
    for (std::size_t r = 0; r < quals.size(); ++r) {
        for (std::size_t r2 = 0; r2 < quals.size(); ++r2) {
            const std::uint64_t v =
                M.at(static_cast<std::int64_t>(r), col_of.at(out.excluded[r2]));
            if (r == r2 && !ring.is_unit(v)) out.unit_pivots = false;
            if (r != r2 && v != 0) out.diagonal_on_excluded = false;
        }
    }
    out.relation_rank = unit_pivot_count(M, ring);

    std::set<std::pair<MultiIndex, MultiIndex>> excluded_set(out.excluded.begin(),
                                                             out.excluded.end());
    for (const auto& pr : all_pairs)
        if (!excluded_set.count(pr)) out.pairs.push_back(pr);
    return out;
}

FreenessReport omega3_probe(const PParams& par, const SplittingChoice& choice,
                            std::int64_t window) {
    par.validate();
    if (window < 0) throw PreconditionViolation("probe window must be nonnegative");
    const std::int64_t pm = static_cast<std::int64_t>(par.pm());
    const Zq ring = Zq::from(par);
    const Zq mod_p(static_cast<std::uint64_t>(par.p), 1);
    const std::vector<MultiIndex> gens1 = omega1_exponents(par);
    const std::vector<MultiIndex> quals = qualifying_indices(par);

    FreenessReport rep;
    rep.par = par;
    rep.window = window;
    rep.choice = choice;

    // B-image, sorted, with the (possibly several) preimages per element.
    std::map<MultiIndex, std::vector<MultiIndex>> preimages;
    for (const MultiIndex& I : quals) {
        const auto* ab = choice.find(I);
        if (!ab) throw PreconditionViolation("splitting choice is missing " + mi_str(I));
        preimages[ab->second].push_back(I);
    }

    const auto in_generating_set = [&](const MultiIndex& U, const MultiIndex& V,
                                       const MultiIndex& W) {
        if (choice.is_excluded_pair(V, W)) return false;
        if (!preimages.count(W) && choice.is_excluded_pair(U, V)) return false;
        return true;
    };

    // Columns: the stated generating set first, then any other triple the
    // literal relation display references (in first-reference order).
    std::map<std::vector<std::int64_t>, std::int64_t> col_of;  // flattened triple
    std::vector<std::string> col_label;
    const auto flat = [](const MultiIndex& u, const MultiIndex& v, const MultiIndex& w) {
        std::vector<std::int64_t> k;
        k.reserve(3 * u.size());
        k.insert(k.end(), u.begin(), u.end());
        k.insert(k.end(), v.begin(), v.end());
        k.insert(k.end(), w.begin(), w.end());
        return k;
    };
    for (const MultiIndex& U : gens1)
        for (const MultiIndex& V : gens1)
            for (const MultiIndex& W : gens1) {
                if (weight(U) + weight(V) + weight(W) > window) continue;
                if (!in_generating_set(U, V, W)) continue;
                col_of[flat(U, V, W)] = static_cast<std::int64_t>(col_label.size());
                col_label.push_back(triple_str(U, V, W));
            }
    rep.generator_count = static_cast<std::int64_t>(col_label.size());

    const auto column = [&](const MultiIndex& u, const MultiIndex& v, const MultiIndex& w) {
        const auto key = flat(u, v, w);
        auto it = col_of.find(key);
        if (it != col_of.end()) return it->second;
        const std::int64_t c = static_cast<std::int64_t>(col_label.size());
        col_of[key] = c;
        col_label.push_back(triple_str(u, v, w));
        ++rep.extra_column_count;
        return c;
    };

    // Relation rows, built literally from the published display.
    struct Row {
        std::map<std::int64_t, std::uint64_t> entries;
        bool first_sum_unit = false;
    };
    std::vector<Row> rows;
    std::set<std::pair<MultiIndex, MultiIndex>> edges;

    for (const MultiIndex& I0 : quals) {
        const auto& [A0, B0] = *choice.find(I0);
        (void)A0;
        (void)B0;
        for (const auto& [W, pre] : preimages) {
            if (weight(I0) + weight(W) > window) continue;
            Row row;
            const auto add_entry = [&](std::int64_t c, std::uint64_t v) {
                auto it = row.entries.emplace(c, 0).first;
                it->second = ring.add(it->second, v);
                if (it->second == 0) row.entries.erase(it);
            };

            // First sum: interior splittings S of I0, skipping the S that
            // the second sum replaces (S = A(I) for an I with B(I) = W).
            MultiIndex S(I0.size(), 0);
            while (lex_next(S, I0)) {
                if (S == I0) continue;
                bool replaced = false;
                for (const MultiIndex& I : pre)
                    if (choice.find(I)->first == S) {
                        replaced = true;
                        break;
                    }
                if (replaced) continue;
                if (weight(S) > pm || weight(I0) - weight(S) > pm) {
                    ++rep.dropped_term_count;  // slot leaves the degree-1 range
                    continue;
                }
                const BigRat c = qbinom(I0, S, pm);
                if (unit_mod_p(c, mod_p)) row.first_sum_unit = true;
                add_entry(column(sub(I0, S), S, W), rat_reduce(c, ring));
            }

            // Second sum: for each preimage I of W, the rewriting of the
            // replaced term through the splitting of I.
            for (const MultiIndex& I : pre) {
                const MultiIndex& AI = choice.find(I)->first;
                if (!leq(AI, I0) || weight(I0) - weight(AI) > pm ||
                    weight(I0) == weight(AI)) {
                    ++rep.dropped_term_count;  // left slot is not a degree-1 exponent
                    continue;
                }
                const BigRat outer = qbinom(I0, AI, pm) / qbinom(I, AI, pm);
                MultiIndex T(I.size(), 0);
                while (lex_next(T, I)) {
                    if (T == I || T == AI) continue;
                    if (weight(T) > pm || weight(I) - weight(T) > pm) {
                        ++rep.dropped_term_count;
                        continue;
                    }
                    const MultiIndex right = sub(I, T);
                    if (preimages.count(right)) {
                        ++rep.reentry_term_count;
                        edges.emplace(W, right);
                    }
                    add_entry(column(sub(I0, AI), T, right),
                              ring.neg(rat_reduce(outer * qbinom(I, T, pm), ring)));
                }
            }

            ++rep.relation_count;
            if (row.entries.empty())
                ++rep.empty_relation_count;
            else if (!row.first_sum_unit)
                ++rep.all_nonunit_relation_count;
            rows.push_back(std::move(row));
        }
    }
    rep.obstruction_all_nonunit = rep.all_nonunit_relation_count > 0;
    rep.obstruction_b_reentry = rep.reentry_term_count > 0;

    // Unit-pivot elimination over Z/p^N and over Z/p.
    const std::int64_t total_cols = static_cast<std::int64_t>(col_label.size());
    Mat M(static_cast<std::int64_t>(rows.size()), total_cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r].entries) M.at(static_cast<std::int64_t>(r), c) = v;
    rep.eliminated_count = unit_pivot_count(M, ring);
    Mat Mp = M;
    for (auto& v : Mp.a) v %= static_cast<std::uint64_t>(par.p);
    rep.eliminated_count_mod_p = unit_pivot_count(Mp, mod_p);
    rep.residual_generators = total_cols - rep.eliminated_count;

    // Elementary cycles of the right-slot dependency graph, rooted at their
    // lexicographically smallest node.
    std::vector<MultiIndex> nodes;
    for (const auto& [w, pre] : preimages) nodes.push_back(w);
    std::map<MultiIndex, std::vector<MultiIndex>> adj;
    for (const auto& [a, b] : edges) adj[a].push_back(b);
    constexpr std::size_t kCycleCap = 256;
    std::vector<MultiIndex> path;
    std::set<MultiIndex> on_path;
    const std::function<void(const MultiIndex&, const MultiIndex&)> dfs =
        [&](const MultiIndex& root, const MultiIndex& at) {
            if (rep.b_cycles.size() >= kCycleCap) return;
            for (const MultiIndex& next : adj[at]) {
                if (next == root) {
                    std::vector<std::string> cycle;
                    for (const MultiIndex& n : path) cycle.push_back(mi_str(n));
                    rep.b_cycles.push_back(std::move(cycle));
                    if (rep.b_cycles.size() >= kCycleCap) return;
                } else if (next > root && !on_path.count(next)) {
                    path.push_back(next);
                    on_path.insert(next);
                    dfs(root, next);
                    on_path.erase(next);
                    path.pop_back();
                }
            }
        };
    for (const MultiIndex& root : nodes) {
        path.assign(1, root);
        on_path = {root};
        dfs(root, root);
    }
    rep.b_cycles_truncated = rep.b_cycles.size() >= kCycleCap;
    return rep;
}

FreenessReport omega3_probe(const PParams& par, const SplittingChoice& choice) {
    return omega3_probe(par, choice, 3 * static_cast<std::int64_t>(par.pm()));
}

std::string FreenessReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "jet-omega3-probe/1";
    j["params"] = {{"p", par.p}, {"m", par.m}, {"n", par.n}, {"modulus_exp", par.big_n}};
    j["window"] = window;
    nlohmann::ordered_json ch = nlohmann::ordered_json::array();
    for (const auto& [i, ab] : choice.split)
        ch.push_back({{"i", mi_str(i)}, {"a", mi_str(ab.first)}, {"b", mi_str(ab.second)}});
    j["choice"] = std::move(ch);
    j["generator_count"] = generator_count;
    j["extra_column_count"] = extra_column_count;
    j["relation_count"] = relation_count;
    j["empty_relation_count"] = empty_relation_count;
    j["dropped_term_count"] = dropped_term_count;
    j["eliminated_count"] = eliminated_count;
    j["eliminated_count_mod_p"] = eliminated_count_mod_p;
    j["residual_generators"] = residual_generators;
    j["obstruction_all_nonunit"] = obstruction_all_nonunit;
    j["all_nonunit_relation_count"] = all_nonunit_relation_count;
    j["obstruction_b_reentry"] = obstruction_b_reentry;
    j["reentry_term_count"] = reentry_term_count;
    j["b_cycles"] = b_cycles;
    j["b_cycles_truncated"] = b_cycles_truncated;
    return j.dump(2) + "\n";
}

}  // namespace mpd
