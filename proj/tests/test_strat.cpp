// Transport automorphism on two-slot windows: pinned columns, axioms,
// invertibility, the grade-3 composition identity, horizontality of the
// augmentation embedding, and the plain-power recombination identity.
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "mpd/arith.hpp"
#include "mpd/matrix.hpp"
#include "mpd/strat.hpp"

using namespace mpd;

namespace {

PParams params(std::int64_t p, std::int64_t m, std::int64_t n, std::int64_t N) {
    PParams par;
    par.p = p;
    par.m = m;
    par.n = n;
    par.big_n = N;
    par.validate();
    return par;
}

TensorWord word2(MultiIndex a, MultiIndex b) {
    return TensorWord{{std::move(a), std::move(b)}};
}

std::uint64_t entry(const StratMatrix& s, const TensorWord& row, const TensorWord& col) {
    const std::int64_t i = s.index_of(row);
    const std::int64_t j = s.index_of(col);
    REQUIRE(i >= 0);
    REQUIRE(j >= 0);
    return s.mat.at(i, j);
}

std::uint64_t column_weight_violations(const StratMatrix& s) {
    std::uint64_t bad = 0;
    for (std::size_t j = 0; j < s.words.size(); ++j) {
        for (std::size_t i = 0; i < s.words.size(); ++i) {
            if (s.mat.at(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) == 0) continue;
            if (s.words[i].total_weight() != s.words[j].total_weight()) ++bad;
        }
    }
    return bad;
}

}  // namespace

TEST_CASE("transport of pure right-slot words matches the signed re-expansion") {
    const PParams par = params(2, 1, 1, 2);  // q = 4, level cap p^m = 2
    const StratMatrix eps = stratification_eps(par, 4);

    // weight 0: identity.
    CHECK(entry(eps, word2({0}, {0}), word2({0}, {0})) == 1);

    // [0|1] -> [1|0] - [0|1].
    CHECK(entry(eps, word2({1}, {0}), word2({0}, {1})) == 1);
    CHECK(entry(eps, word2({0}, {1}), word2({0}, {1})) == 3);
    CHECK(entry(eps, word2({1}, {1}), word2({0}, {1})) == 0);

    // [0|2] -> [2|0] - 2*[1|1] + [0|2].
    CHECK(entry(eps, word2({2}, {0}), word2({0}, {2})) == 1);
    CHECK(entry(eps, word2({1}, {1}), word2({0}, {2})) == 2);
    CHECK(entry(eps, word2({0}, {2}), word2({0}, {2})) == 1);

    // A pure left slot transports to the right-hand output slot.
    CHECK(entry(eps, word2({0}, {1}), word2({1}, {0})) == 1);
    CHECK(entry(eps, word2({1}, {0}), word2({1}, {0})) == 0);

    // Mixed word: [1|1] -> [1|1] - [0|2]  (the carried factor merges with
    // structure constant mbinom(2,1) = 1 at level p^m = 2).
    CHECK(entry(eps, word2({1}, {1}), word2({1}, {1})) == 1);
    CHECK(entry(eps, word2({0}, {2}), word2({1}, {1})) == 3);
    CHECK(entry(eps, word2({2}, {0}), word2({1}, {1})) == 0);

    SUBCASE("classical level m = 0") {
        const PParams cl = params(3, 0, 1, 2);  // q = 9
        const StratMatrix e0 = stratification_eps(cl, 3);
        CHECK(entry(e0, word2({1}, {0}), word2({0}, {1})) == 1);
        CHECK(entry(e0, word2({0}, {1}), word2({0}, {1})) == 8);
    }

    SUBCASE("two variables") {
        const PParams p2 = params(2, 1, 2, 3);  // q = 8
        const StratMatrix e2 = stratification_eps(p2, 3);
        const MultiIndex I{1, 1};
        CHECK(entry(e2, word2({1, 1}, {0, 0}), word2({0, 0}, I)) == 1);
        CHECK(entry(e2, word2({1, 0}, {0, 1}), word2({0, 0}, I)) == 7);
        CHECK(entry(e2, word2({0, 1}, {1, 0}), word2({0, 0}, I)) == 7);
        CHECK(entry(e2, word2({0, 0}, {1, 1}), word2({0, 0}, I)) == 1);
    }
}

TEST_CASE("transport preserves weight and restricts to the identity under the augmentation") {
    for (const std::int64_t p : {2, 3}) {
        for (const std::int64_t m : {0, 1}) {
            for (const std::int64_t n : {1, 2}) {
                for (const std::int64_t N : {1, 2}) {
                    const PParams par = params(p, m, n, N);
                    const std::int64_t w = n == 1 ? 6 : 4;
                    const StratMatrix eps = stratification_eps(par, w);
                    CAPTURE(p);
                    CAPTURE(m);
                    CAPTURE(n);
                    CAPTURE(N);
                    CHECK(column_weight_violations(eps) == 0);
                    CHECK(strat_axioms_hold(eps));
                }
            }
        }
    }
}

TEST_CASE("unsigned re-expansion is a two-sided inverse of the transport") {
    for (const std::int64_t p : {2, 3}) {
        for (const std::int64_t m : {0, 1}) {
            for (const std::int64_t n : {1, 2}) {
                const PParams par = params(p, m, n, 2);
                const std::int64_t w = n == 1 ? 6 : 4;
                const StratMatrix eps = stratification_eps(par, w);
                const StratMatrix eta = stratification_eps_inverse(par, w);
                const Zq R = Zq::from(par);
                const Mat id = Mat::identity(static_cast<std::int64_t>(eps.words.size()));
                CAPTURE(p);
                CAPTURE(m);
                CAPTURE(n);
                CHECK(mat_mul(R, eps.mat, eta.mat) == id);
                CHECK(mat_mul(R, eta.mat, eps.mat) == id);
            }
        }
    }

    SUBCASE("agrees with direct matrix inversion") {
        const PParams par = params(2, 1, 1, 2);
        const StratMatrix eps = stratification_eps(par, 4);
        const StratMatrix eta = stratification_eps_inverse(par, 4);
        CHECK(mat_inverse(Zq::from(par), eps.mat) == eta.mat);
    }
}

TEST_CASE("first-column mismatch reports the earliest failing basis element") {
    const PParams par = params(2, 1, 1, 2);
    const StratMatrix eps = stratification_eps(par, 2);
    const Zq R = Zq::from(par);
    const Mat id = Mat::identity(static_cast<std::int64_t>(eps.words.size()));

    const StratCheck same = first_column_mismatch(R, eps.mat, eps.mat, eps.words);
    CHECK(same.ok);
    CHECK(same.failing_basis.empty());

    // The transport is not the identity; the first disagreement in canonical
    // order is the weight-one column [0|1].
    const StratCheck diff = first_column_mismatch(R, eps.mat, id, eps.words);
    CHECK_FALSE(diff.ok);
    CHECK(diff.failing_basis == "[0|1]");
    CHECK(diff.lhs == "3*[0|1] + 1*[1|0]");
    CHECK(diff.rhs == "1*[0|1]");

    CHECK_THROWS_AS(first_column_mismatch(R, eps.mat, Mat(1, 1), eps.words),
                    PreconditionViolation);
}

TEST_CASE("grade-3 composition identity holds on weight windows") {
    SUBCASE("pinned window") {
        const StratCheck c = verify_cocycle(params(2, 1, 1, 2), 6);
        CHECK(c.ok);
        CHECK(c.failing_basis.empty());
    }
    SUBCASE("classical regression at level zero") {
        CHECK(verify_cocycle(params(2, 0, 1, 2), 6).ok);
        CHECK(verify_cocycle(params(3, 0, 2, 2), 4).ok);
    }
    SUBCASE("grid") {
        CHECK(verify_cocycle(params(3, 1, 1, 1), 5).ok);
        CHECK(verify_cocycle(params(2, 1, 2, 2), 4).ok);
        CHECK(verify_cocycle(params(5, 1, 1, 1), 5).ok);
    }
}

TEST_CASE("horizontality of the augmentation embedding") {
    for (const std::int64_t p : {2, 3}) {
        for (const std::int64_t m : {0, 1}) {
            for (const std::int64_t n : {1, 2}) {
                for (const std::int64_t N : {1, 2}) {
                    const PParams par = params(p, m, n, N);
                    const auto pm = static_cast<std::int64_t>(par.pm());
                    const StratCheck c = verify_horizontality(par, n * (pm - 1));
                    CAPTURE(p);
                    CAPTURE(m);
                    CAPTURE(n);
                    CAPTURE(N);
                    CHECK(c.ok);
                    CHECK(c.failing_basis.empty());
                }
            }
        }
    }

    SUBCASE("oversized window changes nothing") {
        CHECK(verify_horizontality(params(2, 1, 2, 2), 12).ok);
    }

    SUBCASE("undersized window is rejected") {
        CHECK_THROWS_AS(verify_horizontality(params(3, 1, 2, 1), 3), PreconditionViolation);
    }
}

TEST_CASE("plain-power recombination through slot multiplication") {
    for (const std::int64_t p : {2, 3}) {
        for (const std::int64_t m : {0, 1}) {
            const PParams par = params(p, m, 1, 2);
            for (std::int64_t k = 0; k <= 6; ++k) {
                CAPTURE(p);
                CAPTURE(m);
                CAPTURE(k);
                CHECK(poly_power_recombination(par, MultiIndex{k}));
            }
        }
    }

    SUBCASE("two variables and other moduli") {
        CHECK(poly_power_recombination(params(2, 1, 2, 1), MultiIndex{1, 1}));
        CHECK(poly_power_recombination(params(2, 1, 2, 3), MultiIndex{2, 1}));
        CHECK(poly_power_recombination(params(2, 1, 2, 3), MultiIndex{3, 2}));
        CHECK(poly_power_recombination(params(3, 1, 2, 2), MultiIndex{2, 2}));
        CHECK(poly_power_recombination(params(2, 2, 1, 2), MultiIndex{5}));
    }
}

TEST_CASE("transport window lookup") {
    const PParams par = params(2, 1, 1, 1);
    const StratMatrix eps = stratification_eps(par, 2);
    CHECK(eps.index_of(word2({0}, {1})) >= 0);
    CHECK(eps.index_of(word2({3}, {3})) == -1);
    CHECK(eps.words.size() == 6);  // weights 0..2 in two slots, n = 1
}
