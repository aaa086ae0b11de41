// Divided-power algebra: pinned operation values, the cosimplicial identity
// battery, and the exact-rational reference model.
#include "doctest.h"
#include "mpd/dpcore.hpp"
#include "oracle_rational.hpp"

using namespace mpd;

namespace {

TensorWord word(std::initializer_list<MultiIndex> slots) {
    TensorWord w;
    w.factors.assign(slots.begin(), slots.end());
    return w;
}

DpAlg alg21(std::int64_t w = 12, std::int64_t big_n = 3) {
    return DpAlg(PParams{2, 1, 1, big_n}, WeightWindow{w});
}

}  // namespace

TEST_CASE("dp_mul: pinned products at p=2, m=1") {
    auto A = alg21();
    // tau^{2} * tau^{2} = 2 tau^{4}  (level factor mbinom(4,2) = 2)
    auto x = A.monomial(word({{2}}));
    auto r = A.dp_mul(x, x);
    CHECK(r.terms.size() == 1);
    CHECK(r.terms.at(word({{4}})) == 2);
    // tau^{1} * tau^{1} = tau^{2}
    auto y = A.monomial(word({{1}}));
    auto s = A.dp_mul(y, y);
    CHECK(s.terms.size() == 1);
    CHECK(s.terms.at(word({{2}})) == 1);
}

TEST_CASE("dp_mul: window truncation and grade checks") {
    DpAlg A(PParams{2, 1, 1, 3}, WeightWindow{3});
    auto x = A.monomial(word({{2}}));
    CHECK(A.dp_mul(x, x).is_zero());  // weight 4 > window 3
    auto g2 = A.monomial(word({{1}, {1}}));
    CHECK_THROWS_AS(A.dp_mul(x, g2), GradeMismatch);
}

TEST_CASE("dp_scale_substitute: pinned vanishing mod 8") {
    auto A = alg21();
    auto x = A.monomial(word({{3}}));
    CHECK(A.dp_scale_substitute(2, x).is_zero());  // 2^3 = 8 = 0 mod 8
    CHECK(A.dp_scale_substitute(3, x).terms.at(word({{3}})) == 3);  // 27 mod 8
}

TEST_CASE("dp_add_expand: pinned expansion of weight 2 at p=2, m=1") {
    auto A = alg21();
    auto r = A.dp_add_expand(MultiIndex{2});
    CHECK(r.terms.size() == 3);
    CHECK(r.terms.at(word({{0}, {2}})) == 1);
    CHECK(r.terms.at(word({{1}, {1}})) == 2);
    CHECK(r.terms.at(word({{2}, {0}})) == 1);
}

TEST_CASE("faces: grade-1 pinned images") {
    auto A = alg21();
    auto x = A.monomial(word({{3}}));
    auto f0 = A.face_map(1, 0, x);
    CHECK(f0.terms.size() == 1);
    CHECK(f0.terms.count(word({{3}, {0}})) == 1);  // append unit on the right
    auto f2 = A.face_map(1, 2, x);
    CHECK(f2.terms.count(word({{0}, {3}})) == 1);  // prepend unit on the left
    auto f1 = A.face_map(1, 1, x);                 // comultiplication
    CHECK(f1.terms.at(word({{0}, {3}})) == 1);
    CHECK(f1.terms.at(word({{1}, {2}})) == 3);  // qbinom(3,1) = 3
    CHECK(f1.terms.at(word({{2}, {1}})) == 3);
    CHECK(f1.terms.at(word({{3}, {0}})) == 1);
    CHECK_THROWS_AS(A.face_map(1, 3, x), IndexOutOfRange);
    CHECK_THROWS_AS(A.face_map(2, 1, x), GradeMismatch);
}

TEST_CASE("degeneracies: counit behavior") {
    auto A = alg21();
    auto keep = A.monomial(word({{3}, {0}}));
    auto r = A.degeneracy_map(2, 0, keep);  // kills slot 2, which is zero here
    CHECK(r.terms.count(word({{3}})) == 1);
    auto die = A.monomial(word({{3}, {1}}));
    CHECK(A.degeneracy_map(2, 0, die).is_zero());
    auto left = A.monomial(word({{0}, {3}}));
    CHECK(A.degeneracy_map(2, 1, left).terms.count(word({{3}})) == 1);
    CHECK_THROWS_AS(A.degeneracy_map(2, 2, keep), IndexOutOfRange);
}

TEST_CASE("cosimplicial identities on weight windows") {
    for (std::int64_t p : {2, 3})
        for (std::int64_t m : {0, 1})
            for (std::int64_t n : {1, 2}) {
                DpAlg A(PParams{p, m, n, 2}, WeightWindow{n == 1 ? 5 : 4});
                for (std::int64_t r = 0; r <= 2; ++r) {
                    for (const auto& w : A.all_words(r)) {
                        const auto x = A.monomial(w);
                        // face-face: d^j d^i = d^i d^{j-1} for i < j
                        for (std::int64_t i = 0; i <= r + 1; ++i)
                            for (std::int64_t j = i + 1; j <= r + 2; ++j)
                                CHECK(A.face_map(r + 1, j, A.face_map(r, i, x)) ==
                                      A.face_map(r + 1, i, A.face_map(r, j - 1, x)));
                        // degeneracy-face on grade r+1 input
                        for (std::int64_t i = 0; i <= r + 1; ++i)
                            for (std::int64_t j = 0; j <= r; ++j) {
                                const auto fx = A.face_map(r, i, x);
                                const auto sj = A.degeneracy_map(r + 1, j, fx);
                                if (i == j || i == j + 1) {
                                    CHECK(sj == x);
                                } else if (i < j) {
                                    CHECK(sj == A.face_map(r - 1, i,
                                                           A.degeneracy_map(r, j - 1, x)));
                                } else {
                                    CHECK(sj == A.face_map(r - 1, i - 1,
                                                           A.degeneracy_map(r, j, x)));
                                }
                            }
                    }
                    // degeneracy-degeneracy on grade r+2 input:
                    // s^j s^i = s^i s^{j+1} for i <= j
                    for (const auto& w : A.all_words(r + 2)) {
                        const auto x = A.monomial(w);
                        for (std::int64_t i = 0; i <= r + 1; ++i)
                            for (std::int64_t j = i; j <= r; ++j)
                                CHECK(A.degeneracy_map(r + 1, j, A.degeneracy_map(r + 2, i, x)) ==
                                      A.degeneracy_map(r + 1, i,
                                                       A.degeneracy_map(r + 2, j + 1, x)));
                    }
                }
            }
}

TEST_CASE("differential: pinned grade-1 image and d o d = 0") {
    auto A = alg21(10);
    auto x = A.monomial(word({{3}}));
    auto d = A.dga_differential(1, x);
    // faces 0 and 2 cancel against the boundary terms of the comultiplication
    CHECK(d.terms.size() == 2);
    CHECK(d.terms.at(word({{1}, {2}})) == A.ring().neg(3));
    CHECK(d.terms.at(word({{2}, {1}})) == A.ring().neg(3));

    for (std::int64_t p : {2, 3})
        for (std::int64_t m : {0, 1})
            for (std::int64_t n : {1, 2}) {
                DpAlg B(PParams{p, m, n, 3}, WeightWindow{n == 1 ? 6 : 4});
                for (std::int64_t r = 0; r <= 2; ++r)
                    for (const auto& w : B.all_words(r)) {
                        const auto dd =
                            B.dga_differential(r + 1, B.dga_differential(r, B.monomial(w)));
                        CHECK(dd.is_zero());
                    }
            }
}

TEST_CASE("one-sided differential: pinned image and squared-zero") {
    auto A = alg21(10);
    auto x = A.monomial(word({{4}}));
    auto d = A.l_differential(0, x);
    // Rational cross-check: tau^{4} = x^4/2! here, so the two-slot expansion
    // (x+y)^4/2! carries x^1y^3-coefficient 4/2 = 2 and x^2y^2 6/2 = 3.
    CHECK(d.terms.size() == 4);
    CHECK(d.terms.at(word({{1}, {3}})) == 2);
    CHECK(d.terms.at(word({{2}, {2}})) == 3);
    CHECK(d.terms.at(word({{3}, {1}})) == 2);
    CHECK(d.terms.at(word({{4}, {0}})) == 1);

    for (std::int64_t p : {2, 3})
        for (std::int64_t m : {0, 1}) {
            DpAlg B(PParams{p, m, 2, 2}, WeightWindow{4});
            for (std::int64_t r = 0; r <= 1; ++r)
                for (const auto& w : B.all_words(r + 1))
                    CHECK(B.l_differential(r + 1, B.l_differential(r, B.monomial(w))).is_zero());
        }
}

TEST_CASE("normalized bases") {
    DpAlg A(PParams{2, 1, 1, 2}, WeightWindow{4});
    const auto nb = A.normalized_basis(2);
    CHECK(nb.size() == 6);  // (1,1),(1,2),(2,1),(1,3),(2,2),(3,1)
    for (const auto& w : nb)
        for (std::int64_t i = 0; i <= 1; ++i)
            CHECK(A.degeneracy_map(2, i, A.monomial(w)).is_zero());

    // One-sided normalized basis in degree 1: first slot nonzero, free tail.
    const auto lb = A.l_normalized_basis(1);
    for (const auto& w : lb) {
        CHECK(w.grade() == 2);
        CHECK(!is_zero(w.factors[0]));
    }
    CHECK(lb.size() == 10);  // (a,c): a in 1..4, c in 0..4-a
}

TEST_CASE("rational reference model: products, expansion, differential") {
    for (std::int64_t p : {2, 3})
        for (std::int64_t m : {0, 1}) {
            PParams par{p, m, 1, 3};
            const std::int64_t pm = static_cast<std::int64_t>(par.pm());
            DpAlg A(par, WeightWindow{10});

            // products of one-slot words
            for (std::int64_t a = 0; a <= 5; ++a)
                for (std::int64_t b = 0; a + b <= 10; ++b) {
                    auto x = A.monomial(word({{a}}));
                    auto y = A.monomial(word({{b}}));
                    auto prod = A.dp_mul(x, y);
                    auto ref = oracle::rp_mul(oracle::phi(x, pm), oracle::phi(y, pm));
                    CHECK(prod.terms == oracle::to_dp_terms(ref, pm, A.ring()));
                }

            // addition expansion against plain repeated multiplication
            oracle::RatPoly one{{word({{0}, {0}}), oracle::Rat(BigInt(1))}};
            oracle::RatPoly xy{{word({{1}, {0}}), oracle::Rat(BigInt(1))},
                               {word({{0}, {1}}), oracle::Rat(BigInt(1))}};
            for (std::int64_t k = 0; k <= 10; ++k) {
                auto expand = A.dp_add_expand(MultiIndex{k});
                auto ref = oracle::rp_pow(xy, k, one);
                oracle::RatPoly scaled;
                for (const auto& [w, c] : ref)
                    oracle::rp_add_term(scaled, w,
                                        c * oracle::Rat(BigInt(1), mpd::factorial(k / pm)));
                CHECK(expand.terms == oracle::to_dp_terms(scaled, pm, A.ring()));
            }

            // first differential: face 0 - comultiplication + face 2 over Q
            for (std::int64_t k = 0; k <= 10; ++k) {
                auto d = A.dga_differential(1, A.monomial(word({{k}})));
                oracle::RatPoly ref;
                const oracle::Rat norm(BigInt(1), mpd::factorial(k / pm));
                oracle::rp_add_term(ref, word({{k}, {0}}), norm);
                for (const auto& [w, c] : oracle::rp_pow(xy, k, one))
                    oracle::rp_add_term(ref, w, -(c * norm));
                oracle::rp_add_term(ref, word({{0}, {k}}), norm);
                CHECK(d.terms == oracle::to_dp_terms(ref, pm, A.ring()));
            }
        }
}

TEST_CASE("scale substitution matches the rational model") {
    PParams par{3, 1, 1, 2};
    DpAlg A(par, WeightWindow{8});
    for (std::int64_t k = 0; k <= 8; ++k)
        for (std::uint64_t c : {0ull, 1ull, 2ull, 5ull}) {
            auto r = A.dp_scale_substitute(c, A.monomial(word({{k}})));
            const std::uint64_t expect =
                A.ring().pow(c, static_cast<std::uint64_t>(k));
            if (expect == 0) {
                CHECK(r.is_zero());
            } else {
                CHECK(r.terms.at(word({{k}})) == expect);
            }
        }
}
