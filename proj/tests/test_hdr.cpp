// Exterior complex construction, the box-basis augmentation maps, the
// product isomorphism, and the quotient cross-validation.
#include <algorithm>
#include <map>

#include "doctest.h"
#include "mpd/hdr.hpp"

using namespace mpd;

namespace {

// Embed a form into the one-sided word complex: form slots left-to-right are
// the REVERSED subset scaled by p^m, the coefficient index sits last.
TensorWord embed_form(const HdrForm& f, std::int64_t n, std::int64_t pm) {
    TensorWord w;
    for (auto it = f.S.rbegin(); it != f.S.rend(); ++it) {
        MultiIndex e = unit_index(n, *it);
        for (auto& x : e) x *= pm;
        w.factors.push_back(std::move(e));
    }
    w.factors.push_back(f.I);
    return w;
}

// Project a grade-(r+2) word onto forms: the first r+1 slots must each be
// p^m times a unit vector; reading them right-to-left gives the wedge order,
// so the sign counts the inversions needed to sort; repeats vanish.
// Returns false when the word projects to zero.
bool project_word(const TensorWord& w, std::int64_t pm, HdrForm& out, int& sign) {
    const std::size_t r1 = w.factors.size() - 1;  // form slots
    std::vector<std::int64_t> js;
    for (std::size_t k = r1; k-- > 0;) {  // right-to-left over slots 0..r1-1
        const MultiIndex& V = w.factors[k];
        std::int64_t j = -1;
        for (std::size_t t = 0; t < V.size(); ++t) {
            if (V[t] == 0) continue;
            if (V[t] != pm || j != -1) return false;
            j = static_cast<std::int64_t>(t);
        }
        if (j == -1) return false;
        js.push_back(j);
    }
    int inv = 0;
    for (std::size_t a = 0; a < js.size(); ++a)
        for (std::size_t b = a + 1; b < js.size(); ++b) {
            if (js[a] == js[b]) return false;
            if (js[a] > js[b]) ++inv;
        }
    std::sort(js.begin(), js.end());
    out.I = w.factors[r1];
    out.S = std::move(js);
    sign = inv % 2 == 0 ? 1 : -1;
    return true;
}

}  // namespace

TEST_CASE("form enumeration, labels, and weights") {
    PParams par{2, 1, 2, 2};
    CHECK(HdrForm{{4}, {}}.label() == "t[4]");
    CHECK(HdrForm{{2, 0}, {1}}.label() == "t[2,0]^w[1]");
    CHECK(HdrForm{{0, 0}, {0, 1}}.weight(2) == 4);

    // weight 4, degree 1 on two coordinates: |I| = 2 and one wedge factor
    const auto fs = hdr_forms(par, 1, 4);
    CHECK(fs.size() == 6);  // 3 multi-indices x 2 subsets
    for (const auto& f : fs) CHECK(f.weight(2) == 4);
    CHECK(hdr_forms(par, 1, 1).empty());  // |I| would be negative
    CHECK(subsets_of_size(4, 2).size() == 6);
    CHECK(subsets_of_size(3, 0).size() == 1);
}

TEST_CASE("constant-coefficient complex: exterior ranks and zero differential") {
    PParams par{2, 1, 2, 2};
    const BasedComplex H2 = build_hdr(par);
    H2.validate();
    CHECK(H2.dim(0) == 1);
    CHECK(H2.dim(1) == 2);
    CHECK(H2.dim(2) == 1);
    for (const auto& D : H2.diffs) CHECK(is_zero_mat(D));

    PParams par3{2, 1, 3, 2};
    CHECK(build_hdr(par3).dim(2) == 3);

    const auto S = homology(build_hdr(par));
    CHECK(S.by_degree.at(0).free_rank == 1);
    CHECK(S.by_degree.at(1).free_rank == 2);
    CHECK(S.by_degree.at(2).free_rank == 1);
}

TEST_CASE("linearized differential: pinned images") {
    PParams par{2, 1, 1, 3};
    const BasedComplex C = build_lhdr(par, 4);
    C.validate();
    // d(t[4]) = qbinom(4,2) t[2]^w[0] = 3 t[2]^w[0]
    const std::int64_t c4 = position_of(C, 0, "t[4]");
    const std::int64_t r2 = position_of(C, 1, "t[2]^w[0]");
    CHECK(C.diffs[0].at(r2, c4) == 3);

    // below the level threshold the differential vanishes
    const BasedComplex C1 = build_lhdr(par, 1);
    CHECK(C1.dim(0) == 1);
    for (const auto& D : C1.diffs) CHECK(is_zero_mat(D));

    // two coordinates: d(t[2,2]) hits both wedge directions with unit
    // coefficients (qbinom(2,2) = 1), then d of the result cancels in w[0,1]
    PParams par2{2, 1, 2, 3};
    const BasedComplex C2 = build_lhdr(par2, 4);
    C2.validate();
    const std::int64_t c22 = position_of(C2, 0, "t[2,2]");
    CHECK(C2.diffs[0].at(position_of(C2, 1, "t[0,2]^w[0]"), c22) == 1);
    CHECK(C2.diffs[0].at(position_of(C2, 1, "t[2,0]^w[1]"), c22) == 1);
    std::int64_t nonzero = 0;
    for (std::int64_t i = 0; i < C2.diffs[0].rows; ++i)
        if (C2.diffs[0].at(i, c22) != 0) ++nonzero;
    CHECK(nonzero == 2);
}

TEST_CASE("linearized complex validates across the parameter grid") {
    for (std::int64_t p : {2, 3})
        for (std::int64_t m : {0, 1})
            for (std::int64_t n : {1, 2}) {
                PParams par{p, m, n, 2};
                for (std::int64_t w = 0; w <= 8; ++w) build_lhdr(par, w).validate();
            }
}

TEST_CASE("cosimplicial one-sided differential projects onto the closed form") {
    for (std::int64_t p : {2, 3})
        for (std::int64_t n : {1, 2}) {
            PParams par{p, 1, n, 2};
            const std::int64_t pm = static_cast<std::int64_t>(par.pm());
            const std::int64_t W = 3 * pm;
            DpAlg A(par, WeightWindow{W});
            for (std::int64_t w = 0; w <= W; ++w) {
                const BasedComplex C = build_lhdr(par, w);
                for (std::int64_t r = 0; r < n; ++r) {
                    const auto src = hdr_forms(par, r, w);
                    const auto dst = hdr_forms(par, r + 1, w);
                    std::map<std::string, std::int64_t> pos;
                    for (std::size_t i = 0; i < dst.size(); ++i)
                        pos.emplace(dst[i].label(), static_cast<std::int64_t>(i));
                    for (std::size_t c = 0; c < src.size(); ++c) {
                        const DPElement img =
                            A.l_differential(r, A.monomial(embed_form(src[c], n, pm)));
                        // accumulate the projection of the word image
                        std::map<std::int64_t, std::uint64_t> proj;
                        for (const auto& [word, coeff] : img.terms) {
                            HdrForm f;
                            int sign = 1;
                            if (!project_word(word, pm, f, sign)) continue;
                            const std::int64_t row = pos.at(f.label());
                            const std::uint64_t v =
                                sign == 1 ? coeff : A.ring().neg(coeff);
                            proj[row] = A.ring().add(proj[row], v);
                        }
                        for (std::size_t i = 0; i < dst.size(); ++i) {
                            const std::uint64_t want =
                                C.diffs[static_cast<std::size_t>(r)].at(
                                    static_cast<std::int64_t>(i), static_cast<std::int64_t>(c));
                            const auto it = proj.find(static_cast<std::int64_t>(i));
                            const std::uint64_t got = it == proj.end() ? 0 : it->second;
                            CHECK(got == want);
                        }
                    }
                }
            }
        }
}

TEST_CASE("box basis: strict bound and cardinality") {
    PParams par{2, 1, 2, 2};
    const auto box = basis_box(par);
    CHECK(box.size() == 4);  // p^{mn} = 2^2
    for (const auto& I : box)
        for (const auto v : I) CHECK(v <= 1);  // strictly below p^m = 2

    PParams par3{3, 1, 1, 2};
    CHECK(basis_box(par3).size() == 3);
    PParams par0{5, 0, 3, 1};
    CHECK(basis_box(par0).size() == 1);  // m = 0: only the origin
}

TEST_CASE("beta: identity at zero, pinned column, unitriangular inverse") {
    PParams par{2, 1, 1, 2};
    const Zq R = Zq::from(par);
    CHECK(beta(par, {0}) == Mat::identity(2));

    // n=1: box = {(0),(1)}; column of e_(1) is a*e_(0) + e_(1)
    const Mat B = beta(par, {3});
    CHECK(B.at(0, 1) == 3);
    CHECK(B.at(1, 1) == 1);
    CHECK(B.at(0, 0) == 1);
    CHECK(B.at(1, 0) == 0);

    // invertibility at several points, n = 2
    PParams par2{3, 1, 2, 2};
    const Zq R2 = Zq::from(par2);
    for (const EvalPoint& a : {EvalPoint{0, 0}, EvalPoint{1, 0}, EvalPoint{4, 7}}) {
        const Mat M = beta(par2, a);
        const Mat Mi = mat_inverse(R2, M);
        CHECK(mat_mul(R2, M, Mi) == Mat::identity(M.rows));
    }
    (void)R;
}

TEST_CASE("augmentation inclusion is a quasi-isomorphism") {
    PParams par{2, 1, 2, 2};
    const ComplexMap f = iota_prime(par, 10);
    f.validate();
    const auto [ok, coneH] = is_quasi_iso(f);
    CHECK(ok);

    // equivalently: H^0 of the window is free of rank p^{mn} spread over the
    // box weights, and all higher homology vanishes
    const auto H = homology(build_lhdr_upto(par, 10), 2);
    CHECK(H.by_degree.at(0).free_rank == 4);
    CHECK(H.by_degree.at(0).torsion.empty());
    for (std::int64_t d = 1; d <= 2; ++d) CHECK(H.by_degree.at(d).trivial());
    CHECK(H.by_degree_weight.at({0, 0}).free_rank == 1);
    CHECK(H.by_degree_weight.at({0, 1}).free_rank == 2);
    CHECK(H.by_degree_weight.at({0, 2}).free_rank == 1);

    // p = 3 spot check
    PParams par3{3, 1, 1, 2};
    const auto [ok3, c3] = is_quasi_iso(iota_prime(par3, 8));
    CHECK(ok3);
}

TEST_CASE("point-shifted augmentation stays a quasi-isomorphism") {
    PParams par{2, 1, 2, 2};
    for (const EvalPoint& a : {EvalPoint{0, 0}, EvalPoint{1, 1}, EvalPoint{0, 3}}) {
        const ComplexMap f = iota(par, a, 10);
        f.validate();
        const auto [ok, coneH] = is_quasi_iso(f);
        CHECK(ok);
    }
    PParams par3{3, 0, 1, 2};
    for (const EvalPoint& a : {EvalPoint{0}, EvalPoint{2}, EvalPoint{8}}) {
        const auto [ok, coneH] = is_quasi_iso(iota(par3, a, 6));
        CHECK(ok);
    }
}

TEST_CASE("product isomorphism: permutation matrices commuting with d") {
    PParams p1{2, 1, 1, 2};
    const ComplexMap f = kunneth_iso(p1, p1, 6);
    f.validate();  // includes the commutation check
    for (std::int64_t d = f.source.d_min; d <= f.source.d_max(); ++d) {
        const Mat* M = f.mat_at(d);
        REQUIRE(M != nullptr);
        CHECK(M->rows == M->cols);
        // exactly one unit entry per column and per row
        std::vector<int> rowseen(static_cast<std::size_t>(M->rows), 0);
        for (std::int64_t c = 0; c < M->cols; ++c) {
            std::int64_t hits = 0;
            for (std::int64_t r = 0; r < M->rows; ++r)
                if (M->at(r, c) != 0) {
                    CHECK(M->at(r, c) == 1);
                    ++hits;
                    ++rowseen[static_cast<std::size_t>(r)];
                }
            CHECK(hits == 1);
        }
        for (const int s : rowseen) CHECK(s == 1);
    }
    const auto [ok, coneH] = is_quasi_iso(f);
    CHECK(ok);

    // iterated: (1 (+) 1) (+) 1 coordinates
    PParams p2{2, 1, 2, 2};
    const ComplexMap g = kunneth_iso(p2, p1, 5);
    g.validate();
    for (std::int64_t d = g.source.d_min; d <= g.source.d_max(); ++d) {
        const Mat* M = g.mat_at(d);
        REQUIRE(M != nullptr);
        CHECK(M->rows == M->cols);
    }
    const auto [ok3, c3] = is_quasi_iso(g);
    CHECK(ok3);
}

TEST_CASE("construction commutes with base change") {
    PParams hi{2, 1, 2, 3};
    PParams lo{2, 1, 2, 1};
    for (std::int64_t w = 0; w <= 6; ++w) {
        const BasedComplex A = base_change(build_lhdr(hi, w), 1);
        const BasedComplex B = build_lhdr(lo, w);
        REQUIRE(A.degree_count() == B.degree_count());
        for (std::size_t k = 0; k < A.diffs.size(); ++k) CHECK(A.diffs[k] == B.diffs[k]);
    }
}

TEST_CASE("quotient cross-validation against the cosimplicial construction") {
    CHECK(crosscheck_quotient(PParams{2, 1, 1, 2}, 6));
    CHECK(crosscheck_quotient(PParams{2, 1, 2, 2}, 6));
    CHECK(crosscheck_quotient(PParams{3, 1, 1, 2}, 7));
    CHECK(crosscheck_quotient(PParams{3, 0, 2, 2}, 4));
    CHECK_THROWS_AS(crosscheck_quotient(PParams{2, 1, 1, 2}, 3), PreconditionViolation);
}

TEST_CASE("level-zero regression: classical coefficient pattern") {
    for (std::int64_t p : {2, 3}) {
        PParams par{p, 0, 2, 2};
        const Zq R = Zq::from(par);
        for (std::int64_t w = 1; w <= 6; ++w) {
            const BasedComplex C = build_lhdr(par, w);
            C.validate();
            // every nonzero entry is +-1: qbinom(i, 1) == 1 and only the
            // wedge sign remains
            for (const auto& D : C.diffs)
                for (const auto v : D.a)
                    CHECK((v == 0 || v == 1 || v == R.q - 1));
        }
        // the box degenerates to the origin: H^0 of the window is rank 1
        const auto H = homology(build_lhdr_upto(par, 5));
        CHECK(H.by_degree.at(0).free_rank == 1);
        CHECK(H.by_degree.at(1).trivial());
        CHECK(H.by_degree.at(2).trivial());
    }
}
