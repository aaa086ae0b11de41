#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mpd/arith.hpp"
#include "mpd/errors.hpp"
#include "mpd/jet.hpp"
#include "mpd/ring.hpp"

using namespace mpd;

namespace {

PParams params(std::int64_t p, std::int64_t m, std::int64_t n, std::int64_t big_n = 1) {
    PParams par;
    par.p = p;
    par.m = m;
    par.n = n;
    par.big_n = big_n;
    return par;
}

MultiIndex mi(std::initializer_list<std::int64_t> v) { return MultiIndex(v); }

}  // namespace

TEST_CASE("degree-1 exponent range and qualifying window") {
    const PParams par = params(2, 1, 1);
    CHECK(omega1_exponents(par) == std::vector<MultiIndex>{mi({1}), mi({2})});
    CHECK(qualifying_indices(par) == std::vector<MultiIndex>{mi({3}), mi({4})});

    const PParams two = params(2, 1, 2);
    // weights 1..2 in two coordinates: 2 + 3 indices
    CHECK(omega1_exponents(two).size() == 5);
    // weights 3..4: 4 + 5 indices
    CHECK(qualifying_indices(two).size() == 9);

    const PParams classical = params(3, 0, 4);
    CHECK(omega1_exponents(classical).size() == 4);   // the coordinate axes
    CHECK(qualifying_indices(classical).size() == 10);  // weight-2 indices
}

TEST_CASE("splittings pick the lex-smallest unit half within the degree-1 range") {
    SUBCASE("classical level") {
        const SplittingChoice c = find_splittings(params(2, 0, 1));
        REQUIRE(c.find(mi({2})) != nullptr);
        CHECK(c.find(mi({2}))->first == mi({1}));
        CHECK(c.find(mi({2}))->second == mi({1}));
    }
    SUBCASE("pinned one-coordinate splittings at p = 2, m = 1") {
        const SplittingChoice c = find_splittings(params(2, 1, 1));
        CHECK(c.find(mi({3}))->first == mi({1}));
        CHECK(c.find(mi({3}))->second == mi({2}));
        // A = (1) would leave a second half of weight 3, outside the
        // degree-1 range, so the choice must move on to A = (2).
        CHECK(c.find(mi({4}))->first == mi({2}));
        CHECK(c.find(mi({4}))->second == mi({2}));
        CHECK(c.is_b_image(mi({2})));
        CHECK_FALSE(c.is_b_image(mi({1})));
        CHECK(c.is_excluded_pair(mi({1}), mi({2})));
        CHECK(c.is_excluded_pair(mi({2}), mi({2})));
        CHECK_FALSE(c.is_excluded_pair(mi({2}), mi({1})));
        CHECK_FALSE(c.is_excluded_pair(mi({1}), mi({1})));
    }
    SUBCASE("weight admissibility overrides plain lex order") {
        // For I = (3,1) the lex-smallest A with a unit structure constant is
        // (0,1), but that leaves (3,0) outside the degree-1 range; the
        // smallest admissible choice is (1,1).
        const SplittingChoice c = find_splittings(params(2, 1, 2));
        REQUIRE(c.find(mi({3, 1})) != nullptr);
        CHECK(c.find(mi({3, 1}))->first == mi({1, 1}));
        CHECK(c.find(mi({3, 1}))->second == mi({2, 0}));
    }
    SUBCASE("both halves always land in the degree-1 range with unit constant") {
        for (std::int64_t p : {2, 3, 5})
            for (std::int64_t m : {0, 1, 2})
                for (std::int64_t n : {1, 2}) {
                    if (p == 5 && m == 2 && n == 2) continue;  // large, covered below
                    const PParams par = params(p, m, n);
                    CAPTURE(p);
                    CAPTURE(m);
                    CAPTURE(n);
                    const SplittingChoice c = find_splittings(par);
                    const std::int64_t pm = static_cast<std::int64_t>(par.pm());
                    const Zq mod_p(static_cast<std::uint64_t>(p), 1);
                    CHECK(c.split.size() == qualifying_indices(par).size());
                    for (const auto& [I, ab] : c.split) {
                        CHECK(add(ab.first, ab.second) == I);
                        CHECK(weight(ab.first) >= 1);
                        CHECK(weight(ab.first) <= pm);
                        CHECK(weight(ab.second) >= 1);
                        CHECK(weight(ab.second) <= pm);
                        CHECK(rat_reduce(qbinom(I, ab.first, pm), mod_p) != 0);
                    }
                }
        CHECK(find_splittings(params(5, 2, 1)).split.size() == 25);
    }
}

TEST_CASE("degree-2 elimination certificate holds across the grid") {
    for (std::int64_t p : {2, 3})
        for (std::int64_t m : {0, 1})
            for (std::int64_t n : {1, 2})
                for (std::int64_t big_n : {1, 2}) {
                    const PParams par = params(p, m, n, big_n);
                    CAPTURE(p);
                    CAPTURE(m);
                    CAPTURE(n);
                    CAPTURE(big_n);
                    const SplittingChoice c = find_splittings(par);
                    const Omega2Basis b = omega2_basis(par, c);
                    CHECK(b.certificate());
                    CHECK(b.relation_rank ==
                          static_cast<std::int64_t>(qualifying_indices(par).size()));
                    CHECK(static_cast<std::int64_t>(b.pairs.size() + b.excluded.size()) ==
                          b.pair_count);
                }
}

TEST_CASE("degree-2 basis at classical level has the alternating rank") {
    for (std::int64_t p : {2, 3})
        for (std::int64_t n : {1, 2, 3}) {
            const PParams par = params(p, 0, n);
            CAPTURE(p);
            CAPTURE(n);
            const Omega2Basis b = omega2_basis(par, find_splittings(par));
            CHECK(static_cast<std::int64_t>(b.pairs.size()) == n * (n - 1) / 2);
        }
}

TEST_CASE("pinned degree-2 basis at p = 2, m = 1, one coordinate") {
    const PParams par = params(2, 1, 1, 2);
    const Omega2Basis b = omega2_basis(par, find_splittings(par));
    CHECK(b.pair_count == 4);
    REQUIRE(b.pairs.size() == 2);
    CHECK(b.pairs[0] == std::make_pair(mi({1}), mi({1})));
    CHECK(b.pairs[1] == std::make_pair(mi({2}), mi({1})));
    CHECK(b.certificate());
    CHECK(b.relation_rank == 2);
}

TEST_CASE("degree-3 probe fully eliminates at classical level") {
    const std::int64_t expected_residual[] = {0, 0, 0, 1};  // C(n,3) for n = 0..3
    const std::int64_t expected_generators[] = {0, 0, 2, 9};
    for (std::int64_t p : {2, 3})
        for (std::int64_t n : {1, 2, 3}) {
            const PParams par = params(p, 0, n, 2);
            CAPTURE(p);
            CAPTURE(n);
            const FreenessReport r = omega3_probe(par, find_splittings(par));
            CHECK(r.window == 3);
            CHECK(r.generator_count == expected_generators[n]);
            CHECK(r.residual_generators == expected_residual[n]);
            CHECK(r.eliminated_count == r.eliminated_count_mod_p);
            CHECK(r.extra_column_count == 0);
        }
}

TEST_CASE("pinned classical two-coordinate probe counts") {
    for (std::int64_t p : {2, 3})
        for (std::int64_t big_n : {1, 2}) {
            const PParams par = params(p, 0, 2, big_n);
            CAPTURE(p);
            CAPTURE(big_n);
            const FreenessReport r = omega3_probe(par, find_splittings(par));
            CHECK(r.generator_count == 2);
            CHECK(r.extra_column_count == 0);
            CHECK(r.relation_count == 6);
            CHECK(r.empty_relation_count == 2);
            CHECK(r.dropped_term_count == 3);
            CHECK(r.eliminated_count == 2);
            CHECK(r.eliminated_count_mod_p == 2);
            CHECK(r.residual_generators == 0);
            CHECK(r.obstruction_all_nonunit);
            CHECK(r.all_nonunit_relation_count == 2);
            CHECK(r.obstruction_b_reentry);
            CHECK(r.reentry_term_count == 2);
            CHECK(r.b_cycles.empty());
            CHECK_FALSE(r.b_cycles_truncated);
        }
}

TEST_CASE("pinned probe at p = 2, m = 1, one coordinate") {
    const PParams par = params(2, 1, 1);
    const SplittingChoice c = find_splittings(par);
    const FreenessReport r = omega3_probe(par, c);
    CHECK(r.window == 6);
    CHECK(r.generator_count == 2);   // [1|1|1] and [2|1|1]
    CHECK(r.extra_column_count == 1);  // the display references [2|2|1]
    CHECK(r.relation_count == 2);
    CHECK(r.empty_relation_count == 1);
    CHECK(r.dropped_term_count == 6);
    CHECK(r.eliminated_count == 1);
    CHECK(r.eliminated_count_mod_p == 1);
    CHECK(r.residual_generators == 2);
    CHECK(r.obstruction_all_nonunit);
    CHECK(r.all_nonunit_relation_count == 1);
    CHECK_FALSE(r.obstruction_b_reentry);
    CHECK(r.reentry_term_count == 0);
    CHECK(r.b_cycles.empty());

    SUBCASE("same counts over the longer modulus") {
        const FreenessReport r2 = omega3_probe(params(2, 1, 1, 2), c);
        CHECK(r2.eliminated_count == 1);
        CHECK(r2.eliminated_count_mod_p == 1);
        CHECK(r2.residual_generators == 2);
    }
    SUBCASE("window controls which relations and generators are emitted") {
        const FreenessReport r0 = omega3_probe(par, c, 0);
        CHECK(r0.generator_count == 0);
        CHECK(r0.relation_count == 0);
        CHECK(r0.residual_generators == 0);
        const FreenessReport r5 = omega3_probe(par, c, 5);
        CHECK(r5.generator_count == 2);
        CHECK(r5.relation_count == 1);  // the weight-6 relation is out of window
        CHECK(r5.eliminated_count == 1);
        CHECK(r5.residual_generators == 2);
        CHECK_THROWS_AS(omega3_probe(par, c, -1), PreconditionViolation);
    }
}

TEST_CASE("probe reports are schema-valid, consistent, and deterministic") {
    for (std::int64_t p : {2, 3})
        for (std::int64_t m : {0, 1})
            for (std::int64_t n : {1, 2}) {
                const PParams par = params(p, m, n);
                CAPTURE(p);
                CAPTURE(m);
                CAPTURE(n);
                const SplittingChoice c = find_splittings(par);
                const FreenessReport r = omega3_probe(par, c);
                const std::string text = r.to_json();
                CHECK(omega3_probe(par, c).to_json() == text);  // byte determinism

                const nlohmann::json j = nlohmann::json::parse(text);
                CHECK(j.at("schema") == "jet-omega3-probe/1");
                CHECK(j.at("params").at("p") == p);
                CHECK(j.at("params").at("m") == m);
                CHECK(j.at("params").at("n") == n);
                CHECK(j.at("window") == 3 * static_cast<std::int64_t>(par.pm()));
                CHECK(j.at("choice").size() == c.split.size());
                CHECK(j.at("generator_count") == r.generator_count);
                CHECK(j.at("residual_generators") == r.residual_generators);
                CHECK(j.at("b_cycles").is_array());

                // Internal consistency: the probe measures, it never verdicts.
                CHECK(r.residual_generators ==
                      r.generator_count + r.extra_column_count - r.eliminated_count);
                CHECK(r.eliminated_count <= r.generator_count + r.extra_column_count);
                CHECK(r.eliminated_count_mod_p <= r.eliminated_count);
                CHECK(r.obstruction_all_nonunit == (r.all_nonunit_relation_count > 0));
                CHECK(r.obstruction_b_reentry == (r.reentry_term_count > 0));
                CHECK(r.empty_relation_count <= r.relation_count);
                for (const auto& cycle : r.b_cycles) {
                    REQUIRE(!cycle.empty());
                    // each cycle is rooted at its lexicographically least node
                    for (const std::string& node : cycle) CHECK(node >= cycle.front());
                }
            }
}
